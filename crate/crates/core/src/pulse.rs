//! Gaussian probe pulses and their propagation through the medium.
//!
//! Fourier convention: an envelope is `a(τ) = ∫ A(ν) e^{−iντ} dν`, where ν
//! is the angular-frequency offset from the pulse carrier. Each spectral
//! component picks up `exp{2πi ω L χ(ω) / c}` with the full `ω = ω₀ + δ₀Γ + ν`.
//! The vacuum phase `ω L / c` is removed by reporting times in the
//! retarded frame τ = t − L/c.
//!
//! Both grids are centred: sample `k` sits at `(k − N/2)·dω` and sample
//! `n` at `(n − N/2)·dt`, with `dω·dt·N = 2π`. The centring shifts reduce
//! to alternating signs, so a single FFT of length N does each transform.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::dispersion::{derivative_step, group_index, ResponseModel};
use crate::error::{Error, Result};
use crate::medium::{AtomicMedium, DriveConfig};
use crate::numdiff;
use crate::output::render_csv;
use crate::susceptibility::{chi_eit, shifted_component, Polarization};
use crate::SPEED_OF_LIGHT;

/// Spectral half-width of the reference pulse, Hz (σ = 2π × 4.775 kHz).
pub const REFERENCE_PULSE_WIDTH_HZ: f64 = 4775.0;
/// Smallest spectral span, in units of σ, accepted by [`gaussian_spectrum`].
pub const MIN_SPAN_SPECTRUM: f64 = 8.0;
/// Smallest spectral span, in units of σ, accepted for propagation.
pub const MIN_SPAN_PROPAGATION: f64 = 16.0;
pub const DEFAULT_POINTS: usize = 1 << 14;
pub const DEFAULT_SPAN_OVER_SIGMA: f64 = 64.0;
/// Half-width, in units of 1/σ, of the time window written to CSV output
/// around the input and output peaks.
const DISPLAY_HALF_WIDTH: f64 = 12.0;

/// `ℰ(t) = ℰ₀ exp(−σ²t²/4)` ⇔ `ℰ(ν) = ℰ₀ exp(−ν²/σ²) / (σ√π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPulseSpec {
    /// σ, rad/s.
    pub sigma: f64,
    /// ℰ₀, arbitrary field units.
    pub amplitude: f64,
    /// Carrier detuning δ₀ from ω_e1, units of Γ.
    pub center_delta: f64,
}

impl GaussianPulseSpec {
    pub fn new(sigma: f64, amplitude: f64, center_delta: f64) -> Result<Self> {
        let spec = GaussianPulseSpec {
            sigma,
            amplitude,
            center_delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// σ = 2π × 4.775 kHz, ℰ₀ = 1, carrier on the σ⁻ transparency point.
    pub fn reference() -> Self {
        GaussianPulseSpec {
            sigma: 2.0 * PI * REFERENCE_PULSE_WIDTH_HZ,
            amplitude: 1.0,
            center_delta: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid("sigma", format!("must be > 0, got {}", self.sigma)));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::invalid("amplitude", "must be finite"));
        }
        if !self.center_delta.is_finite() {
            return Err(Error::invalid("center_delta", "must be finite"));
        }
        Ok(())
    }

    pub fn spectrum_at(&self, nu: f64) -> f64 {
        self.amplitude / (self.sigma * PI.sqrt()) * (-(nu / self.sigma).powi(2)).exp()
    }

    pub fn envelope_at(&self, t: f64) -> f64 {
        self.amplitude * (-(self.sigma * t).powi(2) / 4.0).exp()
    }

    /// Full width at half maximum of |ℰ(t)|², `2√(2 ln 2)/σ`, s.
    pub fn intensity_fwhm(&self) -> f64 {
        2.0 * (2.0 * std::f64::consts::LN_2).sqrt() / self.sigma
    }

    /// Full width at half maximum of |ℰ(t)|, `4√(ln 2)/σ`, s.
    pub fn amplitude_fwhm(&self) -> f64 {
        4.0 * std::f64::consts::LN_2.sqrt() / self.sigma
    }
}

/// Uniform, centred frequency/time grids for one FFT of length `n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    n_points: usize,
    span: f64,
}

impl SpectralGrid {
    pub const MIN_POINTS: usize = 1 << 10;

    /// `span` is the total angular-frequency width in rad/s.
    pub fn new(n_points: usize, span: f64) -> Result<Self> {
        if n_points < Self::MIN_POINTS || !n_points.is_power_of_two() {
            return Err(Error::invalid(
                "n_points",
                format!("must be a power of two >= {}, got {n_points}", Self::MIN_POINTS),
            ));
        }
        if !(span.is_finite() && span > 0.0) {
            return Err(Error::invalid("span", format!("must be > 0, got {span}")));
        }
        Ok(SpectralGrid { n_points, span })
    }

    /// 2¹⁴ points over 64σ.
    pub fn for_pulse(spec: &GaussianPulseSpec) -> Self {
        SpectralGrid {
            n_points: DEFAULT_POINTS,
            span: DEFAULT_SPAN_OVER_SIGMA * spec.sigma,
        }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn domega(&self) -> f64 {
        self.span / self.n_points as f64
    }

    pub fn dt(&self) -> f64 {
        2.0 * PI / self.span
    }

    fn centred(&self, i: usize) -> f64 {
        i as f64 - (self.n_points / 2) as f64
    }

    /// Offset from the carrier of frequency sample `k`, rad/s.
    pub fn omega(&self, k: usize) -> f64 {
        self.centred(k) * self.domega()
    }

    /// Time of sample `n`, s.
    pub fn time(&self, n: usize) -> f64 {
        self.centred(n) * self.dt()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_points).map(|n| self.time(n)).collect()
    }
}

fn alternate(samples: &mut [Complex64]) {
    for s in samples.iter_mut().skip(1).step_by(2) {
        *s = -*s;
    }
}

/// Time-domain envelope `a(τₙ) = Σₖ A(νₖ) e^{−iνₖτₙ} dω`.
pub fn synthesize(spectrum: &[Complex64], grid: &SpectralGrid) -> Vec<Complex64> {
    assert_eq!(spectrum.len(), grid.n_points(), "spectrum length must match grid");
    let mut buf = spectrum.to_vec();
    alternate(&mut buf);
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    alternate(&mut buf);
    let scale = grid.domega();
    buf.iter_mut().for_each(|s| *s *= scale);
    buf
}

/// Spectrum `A(νₖ) = (1/2π) Σₙ a(τₙ) e^{iνₖτₙ} dt`; inverse of [`synthesize`].
pub fn analyze(samples: &[Complex64], grid: &SpectralGrid) -> Vec<Complex64> {
    assert_eq!(samples.len(), grid.n_points(), "sample length must match grid");
    let mut buf = samples.to_vec();
    alternate(&mut buf);
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    alternate(&mut buf);
    let scale = grid.dt() / (2.0 * PI);
    buf.iter_mut().for_each(|s| *s *= scale);
    buf
}

/// Samples the pulse spectrum on the grid.
pub fn gaussian_spectrum(spec: &GaussianPulseSpec, grid: &SpectralGrid) -> Result<Vec<Complex64>> {
    spec.validate()?;
    let required = MIN_SPAN_SPECTRUM * spec.sigma;
    if grid.span() < required {
        return Err(Error::GridTruncation {
            span: grid.span(),
            required,
        });
    }
    Ok((0..grid.n_points())
        .map(|k| Complex64::new(spec.spectrum_at(grid.omega(k)), 0.0))
        .collect())
}

/// Complex envelope of one circular component on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldEnvelope {
    pub pol: Polarization,
    pub samples: Vec<Complex64>,
    /// Time of the first sample, s.
    pub t_start: f64,
    pub dt: f64,
    /// `Some(L/c)` when times are retarded (τ = t − L/c).
    pub retarded_offset: Option<f64>,
}

impl FieldEnvelope {
    fn on_grid(pol: Polarization, samples: Vec<Complex64>, grid: &SpectralGrid, offset: f64) -> Self {
        FieldEnvelope {
            pol,
            samples,
            t_start: grid.time(0),
            dt: grid.dt(),
            retarded_offset: Some(offset),
        }
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.dt
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_sqr()).collect()
    }

    /// Peak time and peak |ℰ|² (see [`locate_peak`]).
    pub fn peak(&self) -> (f64, f64) {
        let (pos, value) = locate_peak(&self.intensity());
        (self.t_start + pos * self.dt, value)
    }
}

/// Sub-sample position and height of the maximum of `values`, by a
/// parabola through the discrete maximum and its two neighbours.
pub fn locate_peak(values: &[f64]) -> (f64, f64) {
    let (imax, &vmax) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty samples");
    if imax == 0 || imax + 1 == values.len() {
        return (imax as f64, vmax);
    }
    let (l, c, r) = (values[imax - 1], vmax, values[imax + 1]);
    let curvature = l - 2.0 * c + r;
    if curvature >= 0.0 {
        return (imax as f64, vmax);
    }
    let shift = 0.5 * (l - r) / curvature;
    (imax as f64 + shift, c - 0.25 * (l - r) * shift)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationResult {
    pub envelope_plus: FieldEnvelope,
    pub envelope_minus: FieldEnvelope,
    /// Retarded-frame peak times, s.
    pub peak_time_plus: f64,
    pub peak_time_minus: f64,
    /// `peak_time_plus − peak_time_minus`, s.
    pub separation_measured: f64,
    /// Output peak |ℰ±|² over the input component peak |ℰ₀|²/2.
    pub peak_intensity_ratio_plus: f64,
    pub peak_intensity_ratio_minus: f64,
    /// L/c, s.
    pub vacuum_delay: f64,
    pub pulse: GaussianPulseSpec,
}

impl PropagationResult {
    pub const CSV_HEADER: [&'static str; 3] = ["tau_seconds", "intensity_plus", "intensity_minus"];

    /// Sample range covering both output peaks and the input peak with a
    /// margin of 12/σ on each side.
    pub fn display_window(&self) -> Range<usize> {
        let env = &self.envelope_minus;
        let margin = DISPLAY_HALF_WIDTH / self.pulse.sigma;
        let lo = 0f64.min(self.peak_time_plus).min(self.peak_time_minus) - margin;
        let hi = 0f64.max(self.peak_time_plus).max(self.peak_time_minus) + margin;
        let n = env.samples.len();
        let first = ((lo - env.t_start) / env.dt).floor().clamp(0.0, n as f64) as usize;
        let last = ((hi - env.t_start) / env.dt).ceil().clamp(0.0, (n - 1) as f64) as usize;
        first..last + 1
    }

    /// Intensities normalized to the per-component input peak |ℰ₀|²/2.
    pub fn normalized_intensities(&self) -> (Vec<f64>, Vec<f64>) {
        let norm = 0.5 * self.pulse.amplitude * self.pulse.amplitude;
        let scale = |env: &FieldEnvelope| env.samples.iter().map(|s| s.norm_sqr() / norm).collect();
        (scale(&self.envelope_plus), scale(&self.envelope_minus))
    }

    pub fn to_csv(&self) -> String {
        let window = self.display_window();
        let (plus, minus) = self.normalized_intensities();
        let tau: Vec<f64> = window.clone().map(|i| self.envelope_minus.time(i)).collect();
        render_csv(
            &Self::CSV_HEADER,
            &[&tau, &plus[window.clone()], &minus[window]],
        )
    }

    pub fn summary(&self) -> String {
        format!(
            "peak_time_plus={:.6e} s peak_time_minus={:.6e} s separation={:.6e} s \
             ratio_plus={:.6} ratio_minus={:.6}",
            self.peak_time_plus,
            self.peak_time_minus,
            self.separation_measured,
            self.peak_intensity_ratio_plus,
            self.peak_intensity_ratio_minus
        )
    }
}

fn check_propagation_grid(
    spec: &GaussianPulseSpec,
    grid: &SpectralGrid,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<()> {
    let required = MIN_SPAN_PROPAGATION * spec.sigma;
    if grid.span() < required {
        return Err(Error::GridTruncation {
            span: grid.span(),
            required,
        });
    }
    // Narrowest spectral feature: the EIT window (width G²) or, without a
    // control field, the optical linewidth.
    let feature = if drive.g_rabi > 0.0 {
        drive.g_rabi * drive.g_rabi
    } else {
        medium.gamma_e1.min(medium.gamma_e3)
    };
    let limit = feature * medium.gamma_big / 10.0;
    if grid.domega() > limit {
        return Err(Error::GridResolution {
            domega: grid.domega(),
            limit,
        });
    }
    Ok(())
}

fn propagate_component(
    pol: Polarization,
    input: &[Complex64],
    spec: &GaussianPulseSpec,
    grid: &SpectralGrid,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<FieldEnvelope> {
    let carrier = medium.carrier_omega + spec.center_delta * medium.gamma_big;
    let phase_scale = 2.0 * PI * medium.length / SPEED_OF_LIGHT;
    let mut spectrum = Vec::with_capacity(input.len());
    for (k, a) in input.iter().enumerate() {
        let nu = grid.omega(k);
        let chi = chi_eit(spec.center_delta + nu / medium.gamma_big, pol, medium, drive)?.value;
        let transfer = (Complex64::i() * phase_scale * (carrier + nu) * chi).exp();
        spectrum.push(a * transfer);
    }
    let samples = synthesize(&spectrum, grid);
    Ok(FieldEnvelope::on_grid(pol, samples, grid, medium.vacuum_transit()))
}

/// Propagates the linearly polarized pulse through the medium; each
/// circular component carries ℰ/√2 and sees its own dressed susceptibility.
pub fn propagate_spectral(
    spec: &GaussianPulseSpec,
    grid: &SpectralGrid,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<PropagationResult> {
    medium.validate()?;
    drive.validate()?;
    check_propagation_grid(spec, grid, medium, drive)?;
    let input: Vec<Complex64> = gaussian_spectrum(spec, grid)?
        .into_iter()
        .map(|a| a * std::f64::consts::FRAC_1_SQRT_2)
        .collect();
    let (plus, minus) = rayon::join(
        || propagate_component(Polarization::SigmaPlus, &input, spec, grid, medium, drive),
        || propagate_component(Polarization::SigmaMinus, &input, spec, grid, medium, drive),
    );
    let (envelope_plus, envelope_minus) = (plus?, minus?);
    let input_peak = 0.5 * spec.amplitude * spec.amplitude;
    let (peak_time_plus, peak_plus) = envelope_plus.peak();
    let (peak_time_minus, peak_minus) = envelope_minus.peak();
    Ok(PropagationResult {
        envelope_plus,
        envelope_minus,
        peak_time_plus,
        peak_time_minus,
        separation_measured: peak_time_plus - peak_time_minus,
        peak_intensity_ratio_plus: peak_plus / input_peak,
        peak_intensity_ratio_minus: peak_minus / input_peak,
        vacuum_delay: medium.vacuum_transit(),
        pulse: *spec,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaResult {
    pub kappa: Complex64,
    /// σ′ = σ/√(1 − iκ), rad/s.
    pub sigma_prime: Complex64,
}

impl KappaResult {
    /// |σ′/σ|², the σ⁻ peak-intensity reduction factor.
    pub fn intensity_factor(&self, sigma: f64) -> f64 {
        (self.sigma_prime / sigma).norm_sqr()
    }
}

/// Second-order dispersion parameter of the σ⁻ component at the carrier:
/// `κ = (σ²L/2c) d²/dω² {ω[1 + 2πχ(ω)]}`.
///
/// The derivative is expanded as `2·2πχ′ + ω·2πχ″` so the large linear
/// `ω` term never enters a difference quotient.
pub fn compute_kappa(
    spec: &GaussianPulseSpec,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<KappaResult> {
    spec.validate()?;
    medium.validate()?;
    drive.validate()?;
    let pol = Polarization::SigmaMinus;
    let chi = |d: f64| chi_eit(d, pol, medium, drive).map(|c| c.value);
    let gamma = medium.gamma_big;
    let h = derivative_step(spec.center_delta, pol, medium, drive, ResponseModel::Eit);
    let d1 = numdiff::first_derivative(chi, spec.center_delta, h)? / gamma;
    let d2 = numdiff::second_derivative(chi, spec.center_delta, h)? / (gamma * gamma);
    let omega = medium.carrier_omega + spec.center_delta * gamma;
    let curvature = 4.0 * PI * d1 + 2.0 * PI * omega * d2;
    let kappa = spec.sigma * spec.sigma * medium.length / (2.0 * SPEED_OF_LIGHT) * curvature;
    let sigma_prime = spec.sigma / (Complex64::new(1.0, 0.0) - Complex64::i() * kappa).sqrt();
    Ok(KappaResult { kappa, sigma_prime })
}

/// Closed-form σ⁻ output envelope for a pulse centred on the transparency
/// point, in the retarded frame on `grid`'s time axis:
/// `(ℰ₀/√2)(σ′/σ) exp[−σ′²(τ − L(n_g⁻ − 1)/c)²/4]`.
pub fn propagate_gaussian_analytic(
    spec: &GaussianPulseSpec,
    grid: &SpectralGrid,
    medium: &AtomicMedium,
    drive: &DriveConfig,
) -> Result<FieldEnvelope> {
    if medium.gamma_12 != 0.0 {
        return Err(Error::invalid(
            "gamma_12",
            "closed-form envelope needs Γ₁₂ = 0",
        ));
    }
    if shifted_component(drive.b_zeeman) != Polarization::SigmaPlus {
        return Err(Error::invalid(
            "b_zeeman",
            "closed-form envelope needs σ⁻ on the unshifted transition (B >= 0)",
        ));
    }
    if (spec.center_delta - drive.delta_pump).abs() > 1e-12 {
        return Err(Error::invalid(
            "center_delta",
            format!(
                "closed-form envelope needs δ₀ = Δ, got δ₀ = {} and Δ = {}",
                spec.center_delta, drive.delta_pump
            ),
        ));
    }
    let k = compute_kappa(spec, medium, drive)?;
    let ng = group_index(
        spec.center_delta,
        Polarization::SigmaMinus,
        medium,
        drive,
        ResponseModel::Eit,
    )?;
    let delay = medium.length * (ng.n_g - 1.0) / SPEED_OF_LIGHT;
    let ratio = k.sigma_prime / spec.sigma;
    let sp2 = k.sigma_prime * k.sigma_prime;
    let peak = spec.amplitude * std::f64::consts::FRAC_1_SQRT_2 * ratio;
    let samples = (0..grid.n_points())
        .map(|n| {
            let tau = grid.time(n) - delay;
            peak * (-sp2 * tau * tau / 4.0).exp()
        })
        .collect();
    Ok(FieldEnvelope::on_grid(
        Polarization::SigmaMinus,
        samples,
        grid,
        medium.vacuum_transit(),
    ))
}
