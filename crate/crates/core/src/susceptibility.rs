//! Linear susceptibilities of the two circular probe components.
//!
//! The σ⁻ component drives |e⟩↔|1⟩ and the σ⁺ component drives
//! |e⟩↔|3⟩. Both expressions share one Lorentzian (bare) or one dressed
//! form; the component coupled to the Zeeman-shifted sublevel sees it at
//! δ + 2|B|, with its own decay rates.
//!
//! The sign of B encodes the sign of the Landé factor. For B > 0 the σ⁺
//! transition is the shifted one and the σ⁻ transparency window sits at
//! δ = Δ. For B < 0 the roles of the two components are exchanged, so that
//! `χ_σ(δ; −B) = χ_σ̄(δ; B)` whenever the two channels have equal rates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{AtomicMedium, DriveConfig};

const SINGULAR_MODULUS: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    SigmaPlus,
    SigmaMinus,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::SigmaPlus, Polarization::SigmaMinus];

    pub fn label(self) -> &'static str {
        match self {
            Polarization::SigmaPlus => "sigma_plus",
            Polarization::SigmaMinus => "sigma_minus",
        }
    }
}

/// Dimensionless susceptibility evaluated at `delta` (units of Γ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexChi {
    pub value: Complex64,
    pub delta: f64,
}

/// Transition-frame detuning and rates seen by one component.
struct Channel {
    detuning: f64,
    optical_decay: f64,
    ground_decay: f64,
}

/// The component coupled to the Zeeman-shifted sublevel for splitting `b`.
pub fn shifted_component(b: f64) -> Polarization {
    if b < 0.0 {
        Polarization::SigmaMinus
    } else {
        Polarization::SigmaPlus
    }
}

fn channel(delta: f64, pol: Polarization, medium: &AtomicMedium, b: f64) -> Channel {
    let shift = if pol == shifted_component(b) { 2.0 * b.abs() } else { 0.0 };
    let (optical_decay, ground_decay) = match pol {
        Polarization::SigmaMinus => (medium.gamma_e1, medium.gamma_12),
        Polarization::SigmaPlus => (medium.gamma_e3, medium.gamma_23),
    };
    Channel {
        detuning: delta + shift,
        optical_decay,
        ground_decay,
    }
}

/// Susceptibility without the control field.
pub fn chi_bare(delta: f64, pol: Polarization, medium: &AtomicMedium, b: f64) -> ComplexChi {
    let ch = channel(delta, pol, medium, b);
    let optical = Complex64::new(-ch.optical_decay, ch.detuning);
    let value = medium.alpha * -Complex64::i() / (2.0 * optical);
    ComplexChi { value, delta }
}

/// Susceptibility dressed by the control field on |e⟩↔|2⟩.
///
/// Fails only when the denominator modulus drops below 1e-30, which needs
/// G = 0 together with vanishing decay at an exact resonance.
pub fn chi_eit(
    delta: f64,
    pol: Polarization,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<ComplexChi> {
    let ch = channel(delta, pol, medium, drive.b_zeeman);
    let optical = Complex64::new(-ch.optical_decay, ch.detuning);
    let raman = Complex64::new(-ch.ground_decay, ch.detuning - drive.delta_pump);
    let den = optical * raman + drive.g_rabi * drive.g_rabi;
    let modulus = den.norm();
    if modulus.is_nan() || modulus < SINGULAR_MODULUS {
        return Err(Error::SingularSusceptibility { delta, modulus });
    }
    let value = 0.5 * medium.alpha * (-Complex64::i() * raman) / den;
    Ok(ComplexChi { value, delta })
}

/// Distance, in units of Γ, from `delta` to the nearest complex pole of
/// the component's susceptibility: the local length scale over which χ
/// varies, used to size finite-difference steps.
pub fn feature_scale(delta: f64, pol: Polarization, medium: &AtomicMedium, drive: &DriveConfig) -> f64 {
    let ch = channel(delta, pol, medium, drive.b_zeeman);
    let x = Complex64::new(ch.detuning, 0.0);
    let ge = ch.optical_decay;
    let gg = ch.ground_decay;
    let g2 = drive.g_rabi * drive.g_rabi;
    if g2 == 0.0 {
        // The Raman factor cancels; only the optical pole at x = −iΓe remains.
        return ch.detuning.hypot(ge);
    }
    // (ix − Γe)(i(x − Δ) − Γg) + G² = 0  ⇔  x² + bx + c = 0
    let b = Complex64::new(-drive.delta_pump, gg + ge);
    let c = Complex64::new(-ge * gg - g2, -ge * drive.delta_pump);
    let root = (b * b - 4.0 * c).sqrt();
    let p1 = (-b + root) / 2.0;
    let p2 = (-b - root) / 2.0;
    (x - p1).norm().min((x - p2).norm())
}
