use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eit_splitter::experiments::{dataset_paths, AxisSpec};
use eit_splitter::output::{render_csv, write_atomic};
use eit_splitter::pulse::{DEFAULT_POINTS, DEFAULT_SPAN_OVER_SIGMA};
use eit_splitter::{
    chi_bare, chi_eit, propagate_spectral, reproduce, reproduce_all, sweep_ng_vs_pump_detuning,
    sweep_separation_vs_probe_detuning, write_dataset, AtomicMedium, DriveConfig, Error,
    FigureDataset, FigureId, GaussianPulseSpec, MediumConfig, Overrides, Polarization,
    SpectralGrid,
};

/// Polarization-splitting slow-light simulator.
#[derive(Parser, Debug)]
#[command(name = "splitter", version)]
struct Cli {
    /// JSON medium configuration; flags override its values.
    #[arg(long, global = true, env = "SPLITTER_CONFIG")]
    config: Option<PathBuf>,

    /// Output file (directory for `reproduce`). Tables go to stdout when
    /// omitted; `reproduce` defaults to `out/`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(flatten)]
    params: ParamFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct ParamFlags {
    /// Medium prefactor α (dimensionless).
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Control Rabi frequency G/Γ.
    #[arg(long = "g", global = true, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Pump detuning Δ/Γ.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pump_detuning: Option<f64>,
    /// Zeeman splitting B/Γ.
    #[arg(long = "b", global = true, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Negate B after all other settings are applied.
    #[arg(long, global = true)]
    flip_b: bool,
    /// Switch off the control field (G = 0).
    #[arg(long, global = true)]
    no_control: bool,
    /// Cell length, cm.
    #[arg(long, global = true)]
    length: Option<f64>,
    /// Number density, cm⁻³.
    #[arg(long, global = true)]
    density: Option<f64>,
    /// Ground-state decay Γ₁₂/Γ.
    #[arg(long, global = true)]
    gamma12: Option<f64>,
    /// Ground-state decay Γ₂₃/Γ.
    #[arg(long, global = true)]
    gamma23: Option<f64>,
    /// Pulse spectral width σ, rad/s.
    #[arg(long, global = true)]
    sigma: Option<f64>,
    /// Spectral grid size (power of two).
    #[arg(long, global = true)]
    n_points: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate χ̄± against probe detuning.
    Chi {
        /// Probe detuning range in units of Γ, `start:stop:step`.
        #[arg(long, allow_hyphen_values = true, default_value = "-25:25:0.01")]
        delta: String,
        /// Use the two-level response without the control field term.
        #[arg(long)]
        bare: bool,
    },
    /// Group indices and separation at one probe detuning.
    Groupindex {
        /// Probe detuning δ/Γ; defaults to the pump detuning.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
    },
    /// Group index and separation sweeps.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        /// Sweep range in units of Γ, `start:stop:step`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Propagate a Gaussian probe through the cell.
    Propagate,
    /// Regenerate a figure dataset (or `all`).
    Reproduce {
        /// fig2, fig3, fig4, fig5a, fig5b, li7_signflip or all.
        figure: String,
        /// Sweep range override, `start:stop:step`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepKind {
    /// n_g± against pump detuning with δ = Δ.
    Pump,
    /// Separation against probe detuning at fixed Δ.
    Probe,
}

/// Exit status classes.
enum Failure {
    Config(String),
    Numeric(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numeric(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else if matches!(e, Error::Io { .. }) {
            Failure::Other(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

fn config_error(e: Error) -> Failure {
    Failure::Config(e.to_string())
}

fn effective_config(cli: &Cli) -> Result<MediumConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => MediumConfig::load(path).map_err(config_error)?,
        None => MediumConfig::default(),
    };
    let p = &cli.params;
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    if p.alpha.is_some() {
        cfg.alpha = p.alpha;
    }
    set(&mut cfg.G_over_gamma, p.g);
    set(&mut cfg.Delta_over_gamma, p.pump_detuning);
    set(&mut cfg.B_over_gamma, p.b);
    set(&mut cfg.length_cm, p.length);
    set(&mut cfg.number_density_per_cm3, p.density);
    set(&mut cfg.gamma12_over_gamma, p.gamma12);
    set(&mut cfg.gamma23_over_gamma, p.gamma23);
    if p.no_control {
        cfg.G_over_gamma = 0.0;
    }
    if p.flip_b {
        cfg.B_over_gamma = -cfg.B_over_gamma;
    }
    let cfg = cfg.resolved().map_err(config_error)?;
    cfg.to_model().map_err(config_error)?;
    Ok(cfg)
}

fn parse_range(text: &str) -> Result<AxisSpec, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Failure::Config(format!("range `{text}`: expected start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| bad())?;
    }
    let axis = AxisSpec::from_step(v[0], v[1], v[2]).map_err(config_error)?;
    axis.values().map_err(config_error)?;
    Ok(axis)
}

fn pulse_setup(flags: &ParamFlags, center_delta: f64) -> Result<(GaussianPulseSpec, SpectralGrid), Failure> {
    let sigma = flags.sigma.unwrap_or(GaussianPulseSpec::reference().sigma);
    let spec = GaussianPulseSpec::new(sigma, 1.0, center_delta).map_err(config_error)?;
    let n = flags.n_points.unwrap_or(DEFAULT_POINTS);
    let grid = SpectralGrid::new(n, DEFAULT_SPAN_OVER_SIGMA * sigma).map_err(config_error)?;
    Ok((spec, grid))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Other(format!("stdout: {e}")))?,
    }
    Ok(())
}

fn chi_table(axis: &[f64], bare: bool, medium: &AtomicMedium, drive: &DriveConfig) -> Result<String, Failure> {
    let mut cols: [Vec<f64>; 4] = Default::default();
    for &delta in axis {
        let value = |pol| -> Result<_, Failure> {
            Ok(if bare {
                chi_bare(delta, pol, medium, drive.b_zeeman).value
            } else {
                chi_eit(delta, pol, medium, drive)?.value
            })
        };
        let plus = value(Polarization::SigmaPlus)?;
        let minus = value(Polarization::SigmaMinus)?;
        for (col, v) in cols.iter_mut().zip([plus.re, plus.im, minus.re, minus.im]) {
            col.push(v);
        }
    }
    Ok(render_csv(
        &["delta_over_gamma", "re_chi_plus", "im_chi_plus", "re_chi_minus", "im_chi_minus"],
        &[axis, &cols[0], &cols[1], &cols[2], &cols[3]],
    ))
}

fn write_all_datasets(datasets: &[FigureDataset], dir: &Path) -> Result<(), Failure> {
    let mut written = Vec::new();
    for ds in datasets {
        if let Err(e) = write_dataset(ds, dir) {
            // Leave no partial set behind.
            for id in written.iter().chain([&ds.figure_id]) {
                let (csv, params) = dataset_paths(dir, *id);
                let _ = std::fs::remove_file(csv);
                let _ = std::fs::remove_file(params);
            }
            return Err(e.into());
        }
        written.push(ds.figure_id);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = effective_config(cli)?;
    eprintln!("{}", cfg.to_json());
    let (medium, drive) = cfg.to_model()?;
    let out = cli.out.as_deref();

    match &cli.command {
        Command::Chi { delta, bare } => {
            let axis = parse_range(delta)?.values()?;
            emit(out, &chi_table(&axis, *bare, &medium, &drive)?)
        }
        Command::Groupindex { delta } => {
            let delta = delta.unwrap_or(drive.delta_pump);
            let table = sweep_separation_vs_probe_detuning(&[delta], &medium, &drive)?;
            emit(out, &table.to_csv())
        }
        Command::Sweep { kind, range } => {
            let id = match kind {
                SweepKind::Pump => FigureId::Fig3,
                SweepKind::Probe => FigureId::Fig4,
            };
            let axis = match range {
                Some(r) => parse_range(r)?,
                None => id.default_axis().expect("sweep figures have an axis"),
            }
            .values()?;
            let table = match kind {
                SweepKind::Pump => sweep_ng_vs_pump_detuning(&axis, &medium, &drive)?,
                SweepKind::Probe => sweep_separation_vs_probe_detuning(&axis, &medium, &drive)?,
            };
            emit(out, &table.to_csv())
        }
        Command::Propagate => {
            let (spec, grid) = pulse_setup(&cli.params, drive.delta_pump)?;
            let result = propagate_spectral(&spec, &grid, &medium, &drive)?;
            emit(out, &result.to_csv())?;
            eprintln!("{}", result.summary());
            Ok(())
        }
        Command::Reproduce { figure, range } => {
            let overrides = Overrides {
                axis: range.as_deref().map(parse_range).transpose()?,
                sigma: cli.params.sigma,
                n_points: cli.params.n_points,
                span_over_sigma: None,
            };
            let dir = out.unwrap_or(Path::new("out"));
            let datasets = if figure == "all" {
                reproduce_all(&cfg, &overrides)?
            } else {
                let id: FigureId = figure.parse()?;
                vec![reproduce(id, &cfg, &overrides)?]
            };
            write_all_datasets(&datasets, dir)?;
            for ds in &datasets {
                eprintln!("wrote {}", dataset_paths(dir, ds.figure_id).0.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
