//! JSON configuration file binding to [`AtomicMedium`] and [`DriveConfig`].
//!
//! ```json
//! {
//!   "gamma_big_per_s": 3.1e7,
//!   "lambda_angstrom": 5890.0,
//!   "number_density_per_cm3": 2.2e11,
//!   "length_cm": 1.0,
//!   "alpha": null,
//!   "G_over_gamma": 0.15,
//!   "Delta_over_gamma": 0.0,
//!   "B_over_gamma": 10.0,
//!   "gamma12_over_gamma": 0.0,
//!   "gamma23_over_gamma": 0.0
//! }
//! ```
//!
//! Missing keys take the sodium reference values. When `alpha` is absent it
//! is calibrated to n_g⁻ = 3.92×10⁶ at the reference drive (G = 0.15Γ,
//! Δ = 0, Γ₁₂ = 0) for the configured Γ and λ, then scaled by
//! N / 2.2×10¹¹ cm⁻³ since α ∝ N. The user's own G does not enter the
//! calibration: α is a property of the vapor, not of the control field.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{
    angstrom_to_cm, calibrate_alpha, cm_to_angstrom, AtomicMedium, DriveConfig,
    REFERENCE_GROUP_INDEX, REFERENCE_LENGTH, REFERENCE_RABI, REFERENCE_ZEEMAN, SODIUM_DENSITY,
    SODIUM_GAMMA, SODIUM_LAMBDA_ANGSTROM,
};

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    pub gamma_big_per_s: f64,
    pub lambda_angstrom: f64,
    pub number_density_per_cm3: f64,
    pub length_cm: f64,
    pub alpha: Option<f64>,
    pub G_over_gamma: f64,
    pub Delta_over_gamma: f64,
    pub B_over_gamma: f64,
    pub gamma12_over_gamma: f64,
    pub gamma23_over_gamma: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        MediumConfig {
            gamma_big_per_s: SODIUM_GAMMA,
            lambda_angstrom: SODIUM_LAMBDA_ANGSTROM,
            number_density_per_cm3: SODIUM_DENSITY,
            length_cm: REFERENCE_LENGTH,
            alpha: None,
            G_over_gamma: REFERENCE_RABI,
            Delta_over_gamma: 0.0,
            B_over_gamma: REFERENCE_ZEEMAN,
            gamma12_over_gamma: 0.0,
            gamma23_over_gamma: 0.0,
        }
    }
}

impl MediumConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// α from the config, or the calibrated reference value when absent.
    pub fn effective_alpha(&self) -> Result<f64> {
        if let Some(alpha) = self.alpha {
            return Ok(alpha);
        }
        let reference = AtomicMedium::from_wavelength(
            0.0,
            self.gamma_big_per_s,
            angstrom_to_cm(self.lambda_angstrom),
            self.number_density_per_cm3,
            self.length_cm,
        )?;
        let alpha = calibrate_alpha(REFERENCE_GROUP_INDEX, &DriveConfig::reference(), &reference)?;
        Ok(alpha * self.number_density_per_cm3 / SODIUM_DENSITY)
    }

    pub fn to_model(&self) -> Result<(AtomicMedium, DriveConfig)> {
        let alpha = self.effective_alpha()?;
        let medium = AtomicMedium {
            gamma_12: self.gamma12_over_gamma,
            gamma_23: self.gamma23_over_gamma,
            ..AtomicMedium::from_wavelength(
                alpha,
                self.gamma_big_per_s,
                angstrom_to_cm(self.lambda_angstrom),
                self.number_density_per_cm3,
                self.length_cm,
            )?
        };
        medium.validate()?;
        let drive = DriveConfig::new(self.G_over_gamma, self.Delta_over_gamma, self.B_over_gamma)?;
        Ok((medium, drive))
    }

    /// Same configuration with `alpha` made explicit.
    pub fn resolved(&self) -> Result<Self> {
        Ok(MediumConfig {
            alpha: Some(self.effective_alpha()?),
            ..*self
        })
    }

    /// Inverse of [`MediumConfig::to_model`]. Γ_e1 and Γ_e3 are not part of
    /// the schema and are fixed at Γ.
    pub fn from_model(medium: &AtomicMedium, drive: &DriveConfig) -> Self {
        MediumConfig {
            gamma_big_per_s: medium.gamma_big,
            lambda_angstrom: cm_to_angstrom(medium.lambda),
            number_density_per_cm3: medium.number_density,
            length_cm: medium.length,
            alpha: Some(medium.alpha),
            G_over_gamma: drive.g_rabi,
            Delta_over_gamma: drive.delta_pump,
            B_over_gamma: drive.b_zeeman,
            gamma12_over_gamma: medium.gamma_12,
            gamma23_over_gamma: medium.gamma_23,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::default_sodium_medium;

    #[test]
    fn default_matches_sodium_reference() {
        let (m, d) = MediumConfig::default().to_model().unwrap();
        let reference = default_sodium_medium();
        assert!(((m.alpha - reference.alpha) / reference.alpha).abs() < 1e-15);
        assert!(((m.carrier_omega - reference.carrier_omega) / reference.carrier_omega).abs() < 1e-15);
        assert_eq!(d, DriveConfig::reference());
    }

    #[test]
    fn partial_json_uses_defaults() {
        let cfg = MediumConfig::from_json(r#"{"length_cm": 2.5, "B_over_gamma": -10}"#).unwrap();
        assert_eq!(cfg.length_cm, 2.5);
        assert_eq!(cfg.B_over_gamma, -10.0);
        assert_eq!(cfg.G_over_gamma, 0.15);
        assert!(cfg.alpha.is_none());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(MediumConfig::from_json(r#"{"lenght_cm": 2.5}"#).is_err());
    }

    #[test]
    fn explicit_alpha_wins() {
        let cfg = MediumConfig {
            alpha: Some(1e-5),
            ..Default::default()
        };
        assert_eq!(cfg.to_model().unwrap().0.alpha, 1e-5);
    }

    #[test]
    fn alpha_independent_of_user_rabi_and_linear_in_density() {
        let base = MediumConfig::default().effective_alpha().unwrap();
        let strong = MediumConfig {
            G_over_gamma: 0.6,
            ..Default::default()
        };
        assert_eq!(strong.effective_alpha().unwrap(), base);
        let dense = MediumConfig {
            number_density_per_cm3: 4.4e11,
            ..Default::default()
        };
        assert!((dense.effective_alpha().unwrap() / base - 2.0).abs() < 1e-14);
    }

    #[test]
    fn json_round_trip_through_model() {
        let cfg = MediumConfig {
            gamma12_over_gamma: 0.01,
            Delta_over_gamma: 1.5,
            ..Default::default()
        }
        .resolved()
        .unwrap();
        let text = cfg.to_json();
        let back = MediumConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        let (m, d) = back.to_model().unwrap();
        let again = MediumConfig::from_model(&m, &d);
        assert_eq!(again.alpha, cfg.alpha);
        assert_eq!(again.G_over_gamma, cfg.G_over_gamma);
        assert!((again.lambda_angstrom - cfg.lambda_angstrom).abs() < 1e-9);
    }

    #[test]
    fn invalid_values_rejected() {
        let cfg = MediumConfig {
            length_cm: -1.0,
            ..Default::default()
        };
        assert!(cfg.to_model().is_err());
        let cfg = MediumConfig {
            G_over_gamma: -0.1,
            alpha: Some(1e-4),
            ..Default::default()
        };
        assert!(cfg.to_model().is_err());
    }
}
