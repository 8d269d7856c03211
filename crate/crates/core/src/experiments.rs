//! Deterministic regeneration of the reference datasets.
//!
//! Every dataset is computed from a [`ParamsEcho`], the complete parameter
//! record written next to it, so a dataset can be rebuilt bit-for-bit from
//! its sidecar JSON alone.
//!
//! | id             | axis                   | columns |
//! |----------------|------------------------|---------|
//! | `fig2`         | δ/Γ ∈ [−25, 25], 5001  | Re/Im χ̄₊, Re/Im χ̄₋ |
//! | `fig3`         | Δ/Γ ∈ [−20, 20], 401   | sweep table, probe locked to δ = Δ |
//! | `fig4`         | δ/Γ ∈ [−0.1, 0.1], 401 | sweep table at fixed Δ |
//! | `fig5a`        | τΓ                     | input \|ℰ\|²/ℰ₀² |
//! | `fig5b`        | τΓ                     | output \|ℰ±\|² over ℰ₀²/2 |
//! | `li7_signflip` | τΓ                     | `fig5b` with B → −B |
//!
//! Both χ̄± in `fig2` share one absolute δ/Γ axis; the σ⁺ window therefore
//! sits at δ = Δ − 2B rather than on a separate shifted axis.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::MediumConfig;
use crate::dispersion::{sweep_ng_vs_pump_detuning, sweep_separation_vs_probe_detuning, SweepTable};
use crate::error::{Error, Result};
use crate::output::{render_csv, write_atomic};
use crate::pulse::{
    propagate_spectral, GaussianPulseSpec, SpectralGrid, DEFAULT_POINTS, DEFAULT_SPAN_OVER_SIGMA,
};
use crate::susceptibility::{chi_eit, Polarization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5a,
    Fig5b,
    #[serde(rename = "li7_signflip")]
    Li7SignFlip,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5a,
        FigureId::Fig5b,
        FigureId::Li7SignFlip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5a => "fig5a",
            FigureId::Fig5b => "fig5b",
            FigureId::Li7SignFlip => "li7_signflip",
        }
    }

    /// Sweep axis used when no override is given; `None` for pulse figures.
    pub fn default_axis(self) -> Option<AxisSpec> {
        match self {
            FigureId::Fig2 => Some(AxisSpec::new(-25.0, 25.0, 5001)),
            FigureId::Fig3 => Some(AxisSpec::new(-20.0, 20.0, 401)),
            FigureId::Fig4 => Some(AxisSpec::new(-0.1, 0.1, 401)),
            _ => None,
        }
    }

    fn uses_pulse(self) -> bool {
        matches!(self, FigureId::Fig5a | FigureId::Fig5b | FigureId::Li7SignFlip)
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_owned()))
    }
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        AxisSpec { start, stop, points }
    }

    /// Axis from `start:stop:step` notation; the step is rounded so that
    /// both endpoints are on the axis.
    pub fn from_step(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid("step", format!("must be > 0, got {step}")));
        }
        if !(start.is_finite() && stop.is_finite() && stop > start) {
            return Err(Error::invalid("range", format!("need start < stop, got {start}:{stop}")));
        }
        let intervals = ((stop - start) / step).round().max(1.0);
        Ok(AxisSpec::new(start, stop, intervals as usize + 1))
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points < 2 || self.start.is_nan() || self.stop.is_nan() || self.stop <= self.start {
            return Err(Error::invalid(
                "axis",
                format!("need >= 2 points and start < stop, got {self:?}"),
            ));
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect())
    }
}

/// Optional changes to the default dataset parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// Sweep axis for `fig2`, `fig3` and `fig4`.
    pub axis: Option<AxisSpec>,
    /// Pulse width σ, rad/s.
    pub sigma: Option<f64>,
    pub n_points: Option<usize>,
    /// Spectral span in units of σ.
    pub span_over_sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSetup {
    pub sigma: f64,
    pub amplitude: f64,
    pub center_delta: f64,
    pub n_points: usize,
    /// rad/s.
    pub span: f64,
}

impl PulseSetup {
    fn build(&self) -> Result<(GaussianPulseSpec, SpectralGrid)> {
        Ok((
            GaussianPulseSpec::new(self.sigma, self.amplitude, self.center_delta)?,
            SpectralGrid::new(self.n_points, self.span)?,
        ))
    }
}

/// Full parameter record of a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsEcho {
    pub figure_id: FigureId,
    pub config: MediumConfig,
    pub axis: Option<AxisSpec>,
    pub pulse: Option<PulseSetup>,
}

impl ParamsEcho {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("params serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureDataset {
    pub figure_id: FigureId,
    pub columns: Vec<Column>,
    pub params_echo: ParamsEcho,
}

impl FigureDataset {
    fn new(params_echo: ParamsEcho, columns: Vec<(&str, Vec<f64>)>) -> Result<Self> {
        let len = columns.first().map_or(0, |c| c.1.len());
        if len == 0 || columns.iter().any(|c| c.1.len() != len) {
            return Err(Error::invalid("columns", "dataset columns must be non-empty and equal-length"));
        }
        Ok(FigureDataset {
            figure_id: params_echo.figure_id,
            columns: columns
                .into_iter()
                .map(|(name, values)| Column {
                    name: name.to_owned(),
                    values,
                })
                .collect(),
            params_echo,
        })
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn rows(&self) -> usize {
        self.columns[0].values.len()
    }

    pub fn to_csv(&self) -> String {
        let headers: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let cols: Vec<&[f64]> = self.columns.iter().map(|c| c.values.as_slice()).collect();
        render_csv(&headers, &cols)
    }
}

/// Builds the parameter record for `id` without computing anything.
pub fn plan(id: FigureId, config: &MediumConfig, overrides: &Overrides) -> Result<ParamsEcho> {
    let mut config = config.resolved()?;
    if id == FigureId::Li7SignFlip {
        config.B_over_gamma = -config.B_over_gamma;
    }
    let axis = id.default_axis().map(|default| overrides.axis.unwrap_or(default));
    let pulse = if id.uses_pulse() {
        let sigma = overrides.sigma.unwrap_or(GaussianPulseSpec::reference().sigma);
        Some(PulseSetup {
            sigma,
            amplitude: 1.0,
            center_delta: config.Delta_over_gamma,
            n_points: overrides.n_points.unwrap_or(DEFAULT_POINTS),
            span: overrides.span_over_sigma.unwrap_or(DEFAULT_SPAN_OVER_SIGMA) * sigma,
        })
    } else {
        None
    };
    Ok(ParamsEcho {
        figure_id: id,
        config,
        axis,
        pulse,
    })
}

pub fn reproduce(id: FigureId, config: &MediumConfig, overrides: &Overrides) -> Result<FigureDataset> {
    reproduce_from_echo(&plan(id, config, overrides)?)
}

/// Recomputes a dataset from its parameter record.
pub fn reproduce_from_echo(echo: &ParamsEcho) -> Result<FigureDataset> {
    let (medium, drive) = echo.config.to_model()?;
    let axis = || -> Result<Vec<f64>> {
        echo.axis
            .ok_or_else(|| Error::invalid("axis", format!("{} needs a sweep axis", echo.figure_id)))?
            .values()
    };
    let pulse = || -> Result<(GaussianPulseSpec, SpectralGrid)> {
        echo.pulse
            .ok_or_else(|| Error::invalid("pulse", format!("{} needs a pulse setup", echo.figure_id)))?
            .build()
    };
    let gamma = medium.gamma_big;
    match echo.figure_id {
        FigureId::Fig2 => {
            let deltas = axis()?;
            let mut cols: [Vec<f64>; 4] = Default::default();
            for &d in &deltas {
                let plus = chi_eit(d, Polarization::SigmaPlus, &medium, &drive)?.value;
                let minus = chi_eit(d, Polarization::SigmaMinus, &medium, &drive)?.value;
                for (col, v) in cols.iter_mut().zip([plus.re, plus.im, minus.re, minus.im]) {
                    col.push(v);
                }
            }
            let [re_p, im_p, re_m, im_m] = cols;
            FigureDataset::new(
                echo.clone(),
                vec![
                    ("delta_over_gamma", deltas),
                    ("re_chi_plus", re_p),
                    ("im_chi_plus", im_p),
                    ("re_chi_minus", re_m),
                    ("im_chi_minus", im_m),
                ],
            )
        }
        FigureId::Fig3 => {
            let table = sweep_ng_vs_pump_detuning(&axis()?, &medium, &drive)?;
            sweep_dataset(echo, table)
        }
        FigureId::Fig4 => {
            let table = sweep_separation_vs_probe_detuning(&axis()?, &medium, &drive)?;
            sweep_dataset(echo, table)
        }
        FigureId::Fig5a => {
            let (spec, grid) = pulse()?;
            let half = 12.0 / spec.sigma;
            let times: Vec<f64> = grid.times().into_iter().filter(|t| t.abs() <= half).collect();
            let norm = spec.amplitude * spec.amplitude;
            let intensity = times.iter().map(|&t| spec.envelope_at(t).powi(2) / norm).collect();
            let tau_gamma = times.iter().map(|t| t * gamma).collect();
            FigureDataset::new(echo.clone(), vec![("tau_gamma", tau_gamma), ("intensity", intensity)])
        }
        FigureId::Fig5b | FigureId::Li7SignFlip => {
            let (spec, grid) = pulse()?;
            let result = propagate_spectral(&spec, &grid, &medium, &drive)?;
            let window = result.display_window();
            let (plus, minus) = result.normalized_intensities();
            let tau_gamma = window
                .clone()
                .map(|i| result.envelope_minus.time(i) * gamma)
                .collect();
            FigureDataset::new(
                echo.clone(),
                vec![
                    ("tau_gamma", tau_gamma),
                    ("intensity_plus", plus[window.clone()].to_vec()),
                    ("intensity_minus", minus[window].to_vec()),
                ],
            )
        }
    }
}

fn sweep_dataset(echo: &ParamsEcho, table: SweepTable) -> Result<FigureDataset> {
    let gamma = table.gamma_big;
    let columns = vec![
        (SweepTable::CSV_HEADER[0], table.axis.clone()),
        (SweepTable::CSV_HEADER[1], table.column(|r| r.ng_plus)),
        (SweepTable::CSV_HEADER[2], table.column(|r| r.ng_minus)),
        (SweepTable::CSV_HEADER[3], table.column(|r| r.sep_seconds)),
        (SweepTable::CSV_HEADER[4], table.column(|r| r.im_chi_plus)),
        (SweepTable::CSV_HEADER[5], table.column(|r| r.im_chi_minus)),
        (SweepTable::CSV_HEADER[6], table.column(|r| r.sep_seconds * gamma)),
    ];
    FigureDataset::new(echo.clone(), columns)
}

/// All six datasets, in [`FigureId::ALL`] order. The three sweeps have
/// different axes, so `overrides.axis` is ignored here.
pub fn reproduce_all(config: &MediumConfig, overrides: &Overrides) -> Result<Vec<FigureDataset>> {
    let overrides = Overrides {
        axis: None,
        ..*overrides
    };
    FigureId::ALL
        .par_iter()
        .map(|&id| reproduce(id, config, &overrides))
        .collect()
}

pub fn dataset_paths(dir: &Path, id: FigureId) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("{id}.csv")),
        dir.join(format!("{id}.params.json")),
    )
}

/// Writes `<dir>/<id>.csv` and `<dir>/<id>.params.json`.
pub fn write_dataset(dataset: &FigureDataset, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (csv, params) = dataset_paths(dir, dataset.figure_id);
    write_atomic(&csv, dataset.to_csv().as_bytes())?;
    write_atomic(&params, dataset.params_echo.to_json().as_bytes())?;
    Ok(())
}
