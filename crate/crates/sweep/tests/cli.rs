use std::fs;
use std::path::PathBuf;
use std::process::Command;

use bec_sweep::config::{Overrides, SweepConfig};
use bec_sweep::output::to_csv_string;
use bec_sweep::{load_config, run_sweep, validate_config, write_csv, Separation, COLUMNS};

const SURFACE: &str = include_str!("../configs/surface.toml");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bec-sweep"))
}

fn config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/surface.toml")
}

fn small_config(extra: &str) -> SweepConfig {
    validate_config(&format!("gamma = 2.4e-5\nradius = 1e-4\nn_total = 1e6\nt_steps = 4\nn_steps = 3\n{extra}")).unwrap()
}

#[test]
fn golden_config_fills_defaults() {
    let c = validate_config(SURFACE).unwrap();
    let want = SweepConfig {
        t_min: 0.2,
        t_max: 2.0,
        t_steps: 61,
        densities: bec_sweep::config::linspace(1e13, 2e14, 41),
        radius: 1e-4,
        gamma: 2.4e-5,
        n_total: 1e6,
        l_ab: Separation::Infinite,
        oracle_samples: 0,
        seed: 1,
        paper_constants: true,
        workers: None,
        csv: "surface.csv".into(),
        svg: Some("surface.svg".into()),
    };
    assert_eq!(c, want);
}

#[test]
fn csv_round_trips_bit_exactly() {
    let cfg = small_config("oracle_samples = 10000\nl_ab = 1e-2\n");
    let records = run_sweep(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    write_csv(&records, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r') && text.ends_with('\n'));
    assert_eq!(text.lines().count(), records.len() + 1);

    let mut reader = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header, COLUMNS);
    for (row, rec) in reader.records().zip(&records) {
        let row = row.unwrap();
        for (k, want) in rec.numeric_fields().iter().enumerate() {
            let got = (!row[k].is_empty()).then(|| row[k].parse::<f64>().unwrap());
            assert_eq!(got.map(f64::to_bits), want.map(f64::to_bits), "column {}", COLUMNS[k]);
        }
        assert_eq!(&row[19], rec.warnings.join("; "));
    }
}

#[test]
fn one_record_is_two_lines() {
    let cfg = small_config("");
    let recs = run_sweep(&cfg).unwrap();
    assert_eq!(to_csv_string(&recs[..1]).lines().count(), 2);
}

#[test]
fn plateau_is_flat_in_surface_records() {
    let cfg = validate_config(SURFACE).unwrap();
    let recs = run_sweep(&cfg).unwrap();
    let nn = cfg.densities.len();
    for j in 0..nn {
        let e: Vec<f64> = recs
            .iter()
            .skip(j)
            .step_by(nn)
            .filter(|r| r.t >= 1.1)
            .map(|r| r.weighted_entanglement.unwrap())
            .collect();
        let (lo, hi) = e.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        assert!((hi - lo) / lo < 1e-3, "n = {}", cfg.densities[j]);
    }
    for r in &recs {
        let e = r.weighted_entanglement.unwrap();
        assert!((e - r.interaction_probability.unwrap() * r.negativity.unwrap()).abs() <= 1e-12 * e);
    }
}

#[test]
fn oracle_columns_agree_with_closed_forms() {
    let cfg = small_config("oracle_samples = 1000000\n");
    for r in run_sweep(&cfg).unwrap() {
        assert!(r.warnings.is_empty(), "t = {}, n = {}: {:?}", r.t, r.n, r.warnings);
        let (v, se) = (r.oracle_i_aa.unwrap(), r.oracle_i_aa_stderr.unwrap());
        assert!((v - r.i_aa).abs() <= 3.0 * se);
    }
}

#[test]
fn overrides_win_over_file() {
    let o = Overrides { workers: Some(2), oracle_samples: Some(20000), ..Default::default() };
    let c = load_config(&format!("{SURFACE}oracle_samples = 0\n"), &o).unwrap();
    assert_eq!((c.workers, c.oracle_samples), (Some(2), 20000));
}

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "gamma = 2.4e-5\nradius = 1e-4\nn_total = 1e6\nt_steps = 3\nn_steps = 2\n").unwrap();
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("a.csv"))
        .arg("--svg")
        .arg(dir.path().join("a.svg"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(dir.path().join("a.csv")).unwrap().lines().count(), 7);
    let svg = fs::read_to_string(dir.path().join("a.svg")).unwrap();
    assert!(svg.starts_with("<svg xmlns=") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn point_prints_one_record() {
    let out = bin().args(["point", "--config"]).arg(config_path()).args(["--t", "1.5", "--n", "1e14"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], COLUMNS.join(","));
    let e: f64 = lines[1].split(',').nth(13).unwrap().parse().unwrap();
    assert!((e - 1.09e-4).abs() / 1.09e-4 < 0.15);
}

#[test]
fn baseline_table() {
    let out = bin().args(["baseline", "--epsilon", "0.5,0.01"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "epsilon,e_false");
    let v: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(v, 1.0 / 12.0);
    let out = bin().args(["baseline", "--epsilon", "1.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "radius = 1e-4\nn_total = 1e6\nt_min = 2.0\nt_max = 1.0\n").unwrap();
    let out = bin().args(["sweep", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("gamma") && err.contains("t_max"), "{err}");

    let out = bin().args(["sweep", "--config"]).arg(dir.path().join("missing.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = bin().args(["sweep", "--config"]).arg(config_path()).arg("--out").arg(dir.path().join("no/such/dir/x.csv")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = bin().args(["sweep", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["point", "--config"]).arg(config_path()).args(["--t=-1", "--n", "1e14"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
