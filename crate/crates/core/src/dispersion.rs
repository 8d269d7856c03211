//! Group indices, transit times and the σ⁺/σ⁻ temporal separation.
//!
//! The group index is taken from the real (dispersive) part of χ:
//! `n_g = 1 + 2π Re χ + 2π ω Re ∂χ/∂ω`, evaluated at the pulse carrier
//! `ω = ω₀ + δ₀Γ`. The frequency derivative comes from
//! [`numdiff::first_derivative`] in δ/Γ units and is rescaled by 1/Γ; the
//! step is 1/225 of the distance to the nearest pole of χ, at most 10⁻⁴.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{AtomicMedium, DriveConfig};
use crate::numdiff;
use crate::output::render_csv;
use crate::susceptibility::{chi_bare, chi_eit, feature_scale, Polarization};
use crate::SPEED_OF_LIGHT;

/// Which susceptibility drives the dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResponseModel {
    /// No control field.
    Bare,
    /// Dressed by the control field.
    Eit,
}

impl ResponseModel {
    pub fn chi(
        self,
        delta: f64,
        pol: Polarization,
        medium: &AtomicMedium,
        drive: &DriveConfig,
    ) -> Result<Complex64> {
        Ok(match self {
            ResponseModel::Bare => chi_bare(delta, pol, medium, drive.b_zeeman).value,
            ResponseModel::Eit => chi_eit(delta, pol, medium, drive)?.value,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupIndexResult {
    pub n_g: f64,
    /// cm/s.
    pub v_g: f64,
    /// L·n_g/c, s.
    pub transit_time: f64,
    pub pol: Polarization,
    pub delta0: f64,
}

/// Finite-difference step resolving the susceptibility around `delta0`.
pub(crate) fn derivative_step(
    delta0: f64,
    pol: Polarization,
    medium: &AtomicMedium,
    drive: &DriveConfig,
    model: ResponseModel,
) -> f64 {
    let drive = match model {
        ResponseModel::Bare => drive.without_control(),
        ResponseModel::Eit => *drive,
    };
    numdiff::adaptive_step(feature_scale(delta0, pol, medium, &drive))
}

/// ∂χ/∂δ in units of 1/Γ (δ measured in Γ).
pub(crate) fn chi_slope(
    delta0: f64,
    pol: Polarization,
    medium: &AtomicMedium,
    drive: &DriveConfig,
    model: ResponseModel,
) -> Result<Complex64> {
    numdiff::first_derivative(
        |d| model.chi(d, pol, medium, drive),
        delta0,
        derivative_step(delta0, pol, medium, drive, model),
    )
}

pub fn group_index(
    delta0: f64,
    pol: Polarization,
    medium: &AtomicMedium,
    drive: &DriveConfig,
    model: ResponseModel,
) -> Result<GroupIndexResult> {
    medium.validate()?;
    drive.validate()?;
    if !delta0.is_finite() {
        return Err(Error::invalid("delta0", "must be finite"));
    }
    let chi = model.chi(delta0, pol, medium, drive)?;
    let slope = chi_slope(delta0, pol, medium, drive, model)?;
    let omega = medium.carrier_omega + delta0 * medium.gamma_big;
    let n_g = 1.0 + 2.0 * PI * chi.re + 2.0 * PI * omega * slope.re / medium.gamma_big;
    Ok(GroupIndexResult {
        n_g,
        v_g: SPEED_OF_LIGHT / n_g,
        transit_time: medium.length * n_g / SPEED_OF_LIGHT,
        pol,
        delta0,
    })
}

/// t₊ − t₋ in seconds, both components evaluated at the same carrier.
pub fn separation(delta0: f64, medium: &AtomicMedium, drive: &DriveConfig) -> Result<f64> {
    let plus = group_index(delta0, Polarization::SigmaPlus, medium, drive, ResponseModel::Eit)?;
    let minus = group_index(delta0, Polarization::SigmaMinus, medium, drive, ResponseModel::Eit)?;
    Ok(medium.length * (plus.n_g - minus.n_g) / SPEED_OF_LIGHT)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub ng_plus: f64,
    pub ng_minus: f64,
    pub sep_seconds: f64,
    pub im_chi_plus: f64,
    pub im_chi_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// Sweep parameter values, units of Γ.
    pub axis: Vec<f64>,
    pub rows: Vec<SweepRow>,
    /// Γ in rad/s, used for the dimensionless Γ(t₊ − t₋) column.
    pub gamma_big: f64,
}

impl SweepTable {
    pub const CSV_HEADER: [&'static str; 7] = [
        "sweep_param",
        "ng_plus",
        "ng_minus",
        "sep_seconds",
        "im_chi_plus",
        "im_chi_minus",
        "sep_gamma_units",
    ];

    pub fn column(&self, f: impl Fn(&SweepRow) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }

    pub fn to_csv(&self) -> String {
        let ng_plus = self.column(|r| r.ng_plus);
        let ng_minus = self.column(|r| r.ng_minus);
        let sep = self.column(|r| r.sep_seconds);
        let im_plus = self.column(|r| r.im_chi_plus);
        let im_minus = self.column(|r| r.im_chi_minus);
        let sep_gamma = self.column(|r| r.sep_seconds * self.gamma_big);
        render_csv(
            &Self::CSV_HEADER,
            &[&self.axis, &ng_plus, &ng_minus, &sep, &im_plus, &im_minus, &sep_gamma],
        )
    }
}

fn check_axis(axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::invalid("axis", "sweep axis is empty"));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("axis", "sweep axis contains non-finite values"));
    }
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("axis", "sweep axis must be strictly increasing"));
    }
    Ok(())
}

fn sweep_row(delta: f64, medium: &AtomicMedium, drive: &DriveConfig) -> Result<SweepRow> {
    let model = ResponseModel::Eit;
    let plus = group_index(delta, Polarization::SigmaPlus, medium, drive, model)?;
    let minus = group_index(delta, Polarization::SigmaMinus, medium, drive, model)?;
    Ok(SweepRow {
        ng_plus: plus.n_g,
        ng_minus: minus.n_g,
        sep_seconds: medium.length * (plus.n_g - minus.n_g) / SPEED_OF_LIGHT,
        im_chi_plus: chi_eit(delta, Polarization::SigmaPlus, medium, drive)?.value.im,
        im_chi_minus: chi_eit(delta, Polarization::SigmaMinus, medium, drive)?.value.im,
    })
}

fn run_sweep(
    axis: &[f64],
    medium: &AtomicMedium,
    point: impl Fn(f64) -> Result<SweepRow> + Sync,
) -> Result<SweepTable> {
    check_axis(axis)?;
    let rows = axis.par_iter().map(|&x| point(x)).collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        axis: axis.to_vec(),
        rows,
        gamma_big: medium.gamma_big,
    })
}

/// Sweeps the pump detuning Δ while holding the probe on the σ⁻
/// transparency point δ = Δ.
pub fn sweep_ng_vs_pump_detuning(
    pump_detunings: &[f64],
    medium: &AtomicMedium,
    drive_template: &DriveConfig,
) -> Result<SweepTable> {
    run_sweep(pump_detunings, medium, |pump| {
        let drive = DriveConfig {
            delta_pump: pump,
            ..*drive_template
        };
        sweep_row(pump, medium, &drive)
    })
}

/// Sweeps the probe detuning δ at fixed drive.
pub fn sweep_separation_vs_probe_detuning(
    probe_detunings: &[f64],
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<SweepTable> {
    run_sweep(probe_detunings, medium, |delta| sweep_row(delta, medium, drive))
}
