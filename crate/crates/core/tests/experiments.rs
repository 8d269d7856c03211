use eit_splitter::experiments::{dataset_paths, reproduce_from_echo, AxisSpec, ParamsEcho};
use eit_splitter::output::{format_value, parse_csv};
use eit_splitter::{reproduce, write_dataset, Error, FigureDataset, FigureId, MediumConfig, Overrides};

fn small_axis() -> Overrides {
    Overrides {
        axis: Some(AxisSpec::new(-0.05, 0.05, 41)),
        ..Overrides::default()
    }
}

fn rounded(v: f64) -> f64 {
    format_value(v).parse().unwrap()
}

fn peak_tau(ds: &FigureDataset, column: &str) -> f64 {
    let tau = ds.column("tau_gamma").unwrap();
    let y = ds.column(column).unwrap();
    let i = (0..y.len()).max_by(|&a, &b| y[a].total_cmp(&y[b])).unwrap();
    tau[i]
}

#[test]
fn written_files_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let ds = reproduce(FigureId::Fig4, &MediumConfig::default(), &small_axis()).unwrap();
    write_dataset(&ds, dir.path()).unwrap();
    let (csv, params) = dataset_paths(dir.path(), FigureId::Fig4);

    let (header, columns) = parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    let names: Vec<&str> = ds.columns.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(header, names);
    for (col, read) in ds.columns.iter().zip(&columns) {
        let want: Vec<f64> = col.values.iter().map(|&v| rounded(v)).collect();
        assert_eq!(&want, read, "{}", col.name);
    }

    let echo = ParamsEcho::from_json(&std::fs::read_to_string(&params).unwrap()).unwrap();
    assert_eq!(echo, ds.params_echo);
}

#[test]
fn rerun_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let ds = reproduce(FigureId::Fig3, &MediumConfig::default(), &Overrides::default()).unwrap();
        write_dataset(&ds, dir.path()).unwrap();
    }
    let (ca, pa) = dataset_paths(a.path(), FigureId::Fig3);
    let (cb, pb) = dataset_paths(b.path(), FigureId::Fig3);
    assert_eq!(std::fs::read(ca).unwrap(), std::fs::read(cb).unwrap());
    assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
}

#[test]
fn params_file_alone_reproduces_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = MediumConfig {
        G_over_gamma: 0.2,
        ..MediumConfig::default()
    };
    let ds = reproduce(FigureId::Fig4, &cfg, &small_axis()).unwrap();
    write_dataset(&ds, dir.path()).unwrap();
    let (_, params) = dataset_paths(dir.path(), FigureId::Fig4);
    let echo = ParamsEcho::from_json(&std::fs::read_to_string(params).unwrap()).unwrap();
    let again = reproduce_from_echo(&echo).unwrap();
    assert_eq!(again.to_csv(), ds.to_csv());
    for (x, y) in again.columns.iter().zip(&ds.columns) {
        let same = x.values.iter().zip(&y.values).all(|(p, q)| p.to_bits() == q.to_bits());
        assert!(same, "{}", x.name);
    }
}

#[test]
fn pump_sweep_slow_index_flat() {
    let ds = reproduce(FigureId::Fig3, &MediumConfig::default(), &Overrides::default()).unwrap();
    let ng = ds.column("ng_minus").unwrap();
    let mid = ng[ng.len() / 2];
    assert!(ng.iter().all(|v| ((v - mid) / mid).abs() < 1e-3));
    assert_eq!(ds.columns.len(), 7);
    assert_eq!(ds.rows(), 401);
}

#[test]
fn probe_sweep_extremum_near_window() {
    let ds = reproduce(FigureId::Fig4, &MediumConfig::default(), &Overrides::default()).unwrap();
    let sep = ds.column("sep_seconds").unwrap();
    let x = ds.column("sweep_param").unwrap();
    let i = (0..sep.len()).max_by(|&a, &b| sep[a].abs().total_cmp(&sep[b].abs())).unwrap();
    assert!(x[i].abs() < 1e-9);
    assert!((sep[i] + 130.0e-6).abs() < 4e-6, "{}", sep[i]);
}

#[test]
fn propagation_figures() {
    let cfg = MediumConfig::default();
    let fig5a = reproduce(FigureId::Fig5a, &cfg, &Overrides::default()).unwrap();
    assert_eq!(fig5a.columns.len(), 2);
    assert!((fig5a.column("intensity").unwrap().iter().cloned().fold(0.0, f64::max) - 1.0).abs() < 1e-6);

    let fig5b = reproduce(FigureId::Fig5b, &cfg, &Overrides::default()).unwrap();
    let names: Vec<&str> = fig5b.columns.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["tau_gamma", "intensity_plus", "intensity_minus"]);
    assert!(peak_tau(&fig5b, "intensity_minus") > peak_tau(&fig5b, "intensity_plus"));

    let li7 = reproduce(FigureId::Li7SignFlip, &cfg, &Overrides::default()).unwrap();
    assert!(peak_tau(&li7, "intensity_minus") < peak_tau(&li7, "intensity_plus"));
    assert!(li7.params_echo.config.B_over_gamma < 0.0);
}

#[test]
fn unknown_figure_rejected() {
    assert!(matches!("fig6".parse::<FigureId>(), Err(Error::UnknownFigure(s)) if s == "fig6"));
    assert!("".parse::<FigureId>().is_err());
}
