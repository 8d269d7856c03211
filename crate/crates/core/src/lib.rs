//! Polarization splitting of optical pulses in a Zeeman-split EIT medium.
//!
//! A linearly polarized probe pulse is decomposed into its σ⁺ and σ⁻
//! circular components. A magnetic field lifts the ground-state degeneracy
//! of a four-level atom, and a control field opens a transparency window
//! for one component, which then travels with a very small group velocity
//! while the other one is only weakly affected. The crate evaluates the
//! dressed susceptibilities, derives group indices and transit-time
//! separations, propagates Gaussian pulses spectrally, and regenerates the
//! reference datasets.
//!
//! Unit conventions: detunings, Rabi frequencies and decay rates are in
//! units of Γ at every public boundary; lengths are in cm, times in s and
//! angular frequencies in rad/s. Susceptibilities are Gaussian-cgs
//! (refractive contribution `2πχ`).

pub mod config;
pub mod dispersion;
pub mod error;
pub mod experiments;
pub mod medium;
pub mod numdiff;
pub mod output;
pub mod pulse;
pub mod susceptibility;

pub use config::MediumConfig;
pub use dispersion::{
    group_index, separation, sweep_ng_vs_pump_detuning, sweep_separation_vs_probe_detuning,
    GroupIndexResult, ResponseModel, SweepRow, SweepTable,
};
pub use error::{Error, Result};
pub use experiments::{reproduce, reproduce_all, write_dataset, FigureDataset, FigureId, Overrides};
pub use medium::{calibrate_alpha, default_sodium_medium, AtomicMedium, DriveConfig};
pub use pulse::{
    compute_kappa, gaussian_spectrum, propagate_gaussian_analytic, propagate_spectral,
    FieldEnvelope, GaussianPulseSpec, KappaResult, PropagationResult, SpectralGrid,
};
pub use susceptibility::{
    chi_bare, chi_eit, feature_scale, shifted_component, ComplexChi, Polarization,
};

/// Speed of light in vacuum, cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
