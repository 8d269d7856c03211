//! Physical parameters of the atomic medium and the driving fields.
//!
//! The medium strength enters every susceptibility through the single
//! dimensionless prefactor `α = ND²/ħΓ`. The dipole moment is never
//! reconstructed; instead `α` is calibrated from a measured group index at
//! the transparency point (see [`calibrate_alpha`]).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

/// Sodium D-line coherence decay rate Γ, rad/s.
pub const SODIUM_GAMMA: f64 = 3.1e7;
/// Sodium D-line wavelength, Å.
pub const SODIUM_LAMBDA_ANGSTROM: f64 = 5890.0;
/// Vapor density of the reference cell, atoms/cm³.
pub const SODIUM_DENSITY: f64 = 2.2e11;
/// Reference cell length, cm.
pub const REFERENCE_LENGTH: f64 = 1.0;
/// σ⁻ group index at the transparency point of the reference configuration.
pub const REFERENCE_GROUP_INDEX: f64 = 3.92e6;
/// Control Rabi frequency of the reference configuration, units of Γ.
pub const REFERENCE_RABI: f64 = 0.15;
/// Zeeman splitting of the reference configuration, units of Γ.
pub const REFERENCE_ZEEMAN: f64 = 10.0;

const ANGSTROM_CM: f64 = 1e-8;

/// Medium constants. Rates other than `gamma_big` are in units of Γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomicMedium {
    /// `α = ND²/ħΓ`; zero describes vacuum.
    pub alpha: f64,
    /// Γ, rad/s.
    pub gamma_big: f64,
    pub gamma_e1: f64,
    pub gamma_e3: f64,
    pub gamma_12: f64,
    pub gamma_23: f64,
    /// L, cm.
    pub length: f64,
    /// ω₀ = 2πc/λ, rad/s.
    pub carrier_omega: f64,
    /// N, atoms/cm³. Informational.
    pub number_density: f64,
    /// λ, cm. Informational.
    pub lambda: f64,
}

impl AtomicMedium {
    /// Builds a medium from its wavelength; `carrier_omega` follows from λ.
    pub fn from_wavelength(
        alpha: f64,
        gamma_big: f64,
        lambda_cm: f64,
        number_density: f64,
        length: f64,
    ) -> Result<Self> {
        let medium = AtomicMedium {
            alpha,
            gamma_big,
            gamma_e1: 1.0,
            gamma_e3: 1.0,
            gamma_12: 0.0,
            gamma_23: 0.0,
            length,
            carrier_omega: 2.0 * PI * SPEED_OF_LIGHT / lambda_cm,
            number_density,
            lambda: lambda_cm,
        };
        medium.validate()?;
        Ok(medium)
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must be finite and > 0, got {v}")))
            }
        }
        fn non_negative(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")))
            }
        }
        // α = 0 is accepted as the vacuum limit.
        non_negative("alpha", self.alpha)?;
        positive("gamma_big", self.gamma_big)?;
        positive("gamma_e1", self.gamma_e1)?;
        positive("gamma_e3", self.gamma_e3)?;
        non_negative("gamma_12", self.gamma_12)?;
        non_negative("gamma_23", self.gamma_23)?;
        positive("length", self.length)?;
        positive("carrier_omega", self.carrier_omega)?;
        non_negative("number_density", self.number_density)?;
        if self.lambda > 0.0 {
            let expected = 2.0 * PI * SPEED_OF_LIGHT / self.lambda;
            if ((self.carrier_omega - expected) / expected).abs() > 1e-12 {
                return Err(Error::invalid(
                    "carrier_omega",
                    format!("{} inconsistent with 2πc/λ = {expected}", self.carrier_omega),
                ));
            }
        }
        Ok(())
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        AtomicMedium { alpha, ..self }
    }

    pub fn with_length(self, length: f64) -> Self {
        AtomicMedium { length, ..self }
    }

    /// Vacuum transit time L/c, s.
    pub fn vacuum_transit(&self) -> f64 {
        self.length / SPEED_OF_LIGHT
    }
}

/// Control-field and magnetic-field settings, all in units of Γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveConfig {
    /// Control Rabi frequency G.
    pub g_rabi: f64,
    /// Pump detuning Δ = ω_c − ω_e2.
    pub delta_pump: f64,
    /// Signed Zeeman splitting B; the sign encodes the Landé factor.
    pub b_zeeman: f64,
}

impl DriveConfig {
    pub fn new(g_rabi: f64, delta_pump: f64, b_zeeman: f64) -> Result<Self> {
        let drive = DriveConfig {
            g_rabi,
            delta_pump,
            b_zeeman,
        };
        drive.validate()?;
        Ok(drive)
    }

    /// G = 0.15Γ, Δ = 0, B = 10Γ.
    pub fn reference() -> Self {
        DriveConfig {
            g_rabi: REFERENCE_RABI,
            delta_pump: 0.0,
            b_zeeman: REFERENCE_ZEEMAN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g_rabi.is_finite() && self.g_rabi >= 0.0) {
            return Err(Error::invalid(
                "g_rabi",
                format!("must be finite and >= 0, got {}", self.g_rabi),
            ));
        }
        if !self.delta_pump.is_finite() {
            return Err(Error::invalid("delta_pump", "must be finite"));
        }
        if !self.b_zeeman.is_finite() {
            return Err(Error::invalid("b_zeeman", "must be finite"));
        }
        Ok(())
    }

    /// Same drive with the Zeeman splitting reversed (opposite Landé factor).
    pub fn flipped_b(self) -> Self {
        DriveConfig {
            b_zeeman: -self.b_zeeman,
            ..self
        }
    }

    pub fn without_control(self) -> Self {
        DriveConfig { g_rabi: 0.0, ..self }
    }
}

/// Solves for α so that the σ⁻ group index at the transparency point
/// δ = Δ equals `target_group_index`.
///
/// At δ = Δ with Γ₁₂ = 0 the dressed σ⁻ susceptibility vanishes and its
/// slope is exactly `α/(2G²)` per unit δ/Γ, so
/// `n_g = 1 + 2π ω α / (2G²Γ)` with `ω = ω₀ + ΔΓ`, which inverts in closed form.
pub fn calibrate_alpha(
    target_group_index: f64,
    drive: &DriveConfig,
    medium: &AtomicMedium,
) -> Result<f64> {
    drive.validate()?;
    if !(target_group_index.is_finite() && target_group_index > 1.0) {
        return Err(Error::Calibration(format!(
            "target group index must exceed 1, got {target_group_index}"
        )));
    }
    if drive.g_rabi <= 0.0 {
        return Err(Error::Calibration(
            "control Rabi frequency must be positive".into(),
        ));
    }
    if medium.gamma_12 != 0.0 {
        return Err(Error::Calibration(format!(
            "closed form needs Γ₁₂ = 0, got {}",
            medium.gamma_12
        )));
    }
    if !(medium.gamma_big > 0.0 && medium.carrier_omega > 0.0) {
        return Err(Error::Calibration("medium Γ and ω₀ must be positive".into()));
    }
    let omega = medium.carrier_omega + drive.delta_pump * medium.gamma_big;
    let g2 = drive.g_rabi * drive.g_rabi;
    Ok((target_group_index - 1.0) * 2.0 * g2 * medium.gamma_big / (2.0 * PI * omega))
}

/// Sodium D-line vapor cell used for every reference dataset: Γ = 3.1×10⁷ s⁻¹,
/// λ = 5890 Å, N = 2.2×10¹¹ cm⁻³, L = 1 cm, Γ_e1 = Γ_e3 = Γ, Γ₁₂ = Γ₂₃ = 0,
/// with α calibrated to n_g⁻ = 3.92×10⁶ under [`DriveConfig::reference`].
pub fn default_sodium_medium() -> AtomicMedium {
    let bare = AtomicMedium::from_wavelength(
        0.0,
        SODIUM_GAMMA,
        SODIUM_LAMBDA_ANGSTROM * ANGSTROM_CM,
        SODIUM_DENSITY,
        REFERENCE_LENGTH,
    )
    .expect("reference constants are valid");
    let alpha = calibrate_alpha(REFERENCE_GROUP_INDEX, &DriveConfig::reference(), &bare)
        .expect("reference drive is calibratable");
    bare.with_alpha(alpha)
}

pub(crate) fn angstrom_to_cm(a: f64) -> f64 {
    a * ANGSTROM_CM
}

pub(crate) fn cm_to_angstrom(cm: f64) -> f64 {
    cm / ANGSTROM_CM
}
