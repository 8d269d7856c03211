mod common;

use common::{crel, dressed, dressed_slope};
use eit_splitter::dispersion::ResponseModel;
use eit_splitter::numdiff;
use eit_splitter::{chi_bare, chi_eit, default_sodium_medium, AtomicMedium, DriveConfig, Polarization};
use proptest::prelude::*;

fn grid(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let n = ((hi - lo) / step).round() as i64;
    (0..=n).map(move |i| lo + i as f64 * step)
}

#[test]
fn closed_form_oracle_matches_implementation() {
    let m = default_sodium_medium();
    let d = DriveConfig::reference();
    for delta in grid(-25.0, 25.0, 0.37) {
        let minus = chi_eit(delta, Polarization::SigmaMinus, &m, &d).unwrap().value;
        let want = dressed(m.alpha, delta, d.delta_pump, m.gamma_e1, m.gamma_12, d.g_rabi);
        assert!(crel(minus, want) < 1e-14);
        let plus = chi_eit(delta, Polarization::SigmaPlus, &m, &d).unwrap().value;
        let want = dressed(m.alpha, delta + 2.0 * d.b_zeeman, d.delta_pump, m.gamma_e3, m.gamma_23, d.g_rabi);
        assert!(crel(plus, want) < 1e-14);
    }
}

#[test]
fn reduction_to_bare_on_dense_grid() {
    let m = default_sodium_medium();
    let d = DriveConfig::reference().without_control();
    // With G = 0 and no ground decay, each dark point (σ⁻ at δ = Δ, σ⁺ at
    // δ = Δ − 2B) is a 0/0 and must be reported as singular.
    let dark = |delta: f64, pol| match pol {
        Polarization::SigmaMinus => (delta - d.delta_pump).abs() < 1e-9,
        Polarization::SigmaPlus => (delta - d.delta_pump + 2.0 * d.b_zeeman).abs() < 1e-9,
    };
    let mut singular = 0;
    for delta in grid(-20.0, 20.0, 1e-2) {
        for pol in Polarization::BOTH {
            let got = chi_eit(delta, pol, &m, &d);
            if dark(delta, pol) {
                assert!(got.is_err());
                singular += 1;
                continue;
            }
            let b = chi_bare(delta, pol, &m, d.b_zeeman).value;
            assert!(crel(got.unwrap().value, b) < 1e-12, "δ={delta} {pol:?}");
        }
    }
    assert_eq!(singular, 2);
}

#[test]
fn finite_difference_slope_matches_closed_form() {
    let m = default_sodium_medium();
    let d = DriveConfig::reference();
    let mut worst: f64 = 0.0;
    for i in 0..=200 {
        let delta = -0.1 + i as f64 * 1e-3;
        let fd = numdiff::first_derivative(
            |x| ResponseModel::Eit.chi(x, Polarization::SigmaMinus, &m, &d),
            delta,
            numdiff::DEFAULT_STEP,
        )
        .unwrap();
        let exact = dressed_slope(m.alpha, delta, d.delta_pump, m.gamma_e1, m.gamma_12, d.g_rabi);
        worst = worst.max(crel(fd, exact));
    }
    assert!(worst < 1e-6, "worst relative error {worst:e}");
}

#[test]
fn sigma_plus_window_at_shifted_detuning() {
    let m = default_sodium_medium();
    let d = DriveConfig::reference();
    let w = d.delta_pump - 2.0 * d.b_zeeman;
    assert_eq!(chi_eit(w, Polarization::SigmaPlus, &m, &d).unwrap().value.norm(), 0.0);
}

fn medium_strategy() -> impl Strategy<Value = AtomicMedium> {
    (0.1f64..3.0, 0.1f64..3.0, 0.0f64..0.1, 0.0f64..0.1, 1e-6f64..1e-3).prop_map(
        |(e1, e3, g12, g23, alpha)| AtomicMedium {
            gamma_e1: e1,
            gamma_e3: e3,
            gamma_12: g12,
            gamma_23: g23,
            ..default_sodium_medium().with_alpha(alpha)
        },
    )
}

fn drive_strategy() -> impl Strategy<Value = DriveConfig> {
    (0.01f64..2.0, -5.0f64..5.0, 0.0f64..20.0).prop_map(|(g, pump, b)| DriveConfig {
        g_rabi: g,
        delta_pump: pump,
        b_zeeman: b,
    })
}

proptest! {
    #[test]
    fn shift_symmetry(m in medium_strategy(), d in drive_strategy(), delta in -30.0f64..30.0) {
        let plus = chi_eit(delta, Polarization::SigmaPlus, &m, &d).unwrap().value;
        let relabeled = AtomicMedium { gamma_e1: m.gamma_e3, gamma_12: m.gamma_23, ..m };
        let minus = chi_eit(delta + 2.0 * d.b_zeeman, Polarization::SigmaMinus, &relabeled, &d)
            .unwrap()
            .value;
        prop_assert!(crel(plus, minus) < 1e-12 || (plus - minus).norm() == 0.0);
    }

    #[test]
    fn passivity(m in medium_strategy(), d in drive_strategy(), delta in -30.0f64..30.0) {
        for pol in Polarization::BOTH {
            prop_assert!(chi_eit(delta, pol, &m, &d).unwrap().value.im >= -1e-15);
            prop_assert!(chi_bare(delta, pol, &m, d.b_zeeman).value.im >= -1e-15);
        }
    }

    #[test]
    fn no_control_reduction(m in medium_strategy(), d in drive_strategy(), delta in -30.0f64..30.0) {
        prop_assume!(m.gamma_12 > 1e-6 && m.gamma_23 > 1e-6);
        let d = d.without_control();
        for pol in Polarization::BOTH {
            let a = chi_eit(delta, pol, &m, &d).unwrap().value;
            let b = chi_bare(delta, pol, &m, d.b_zeeman).value;
            prop_assert!(crel(a, b) < 1e-12);
        }
    }

    #[test]
    fn linear_in_alpha(d in drive_strategy(), delta in -30.0f64..30.0, k in 0.1f64..10.0) {
        let m = default_sodium_medium();
        for pol in Polarization::BOTH {
            let a = chi_eit(delta, pol, &m, &d).unwrap().value;
            let b = chi_eit(delta, pol, &m.with_alpha(k * m.alpha), &d).unwrap().value;
            prop_assert!((b - k * a).norm() <= 1e-14 * b.norm().max(1e-300));
        }
    }
}

#[test]
fn passivity_on_reference_grid() {
    let m = default_sodium_medium();
    for d in [DriveConfig::reference(), DriveConfig::reference().flipped_b()] {
        for delta in grid(-25.0, 25.0, 0.01) {
            for pol in Polarization::BOTH {
                assert!(chi_eit(delta, pol, &m, &d).unwrap().value.im >= -1e-15);
            }
        }
    }
}
