use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bec_entangle::false_entanglement;
use bec_sweep::config::{load_config, Overrides, SweepConfig};
use bec_sweep::output::{format_float, header, format_row, write_csv};
use bec_sweep::validation::{finite_separation_at_radius, integral_checks, rho1_checks, RHO1_DENSITY};
use bec_sweep::{render_heatmap, run_points, run_sweep, HeatmapError};
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_IO: u8 = 3;
const DEFAULT_VALIDATION_SAMPLES: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "bec-sweep", version, about = "Probe entanglement in an ideal Bose gas over (t, n) grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the whole grid and write CSV (and SVG if configured)
    Sweep(Common),
    /// Evaluate a single (t, n) point and print its CSV row
    Point {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: f64,
        /// Density [cm^-3]
        #[arg(long)]
        n: f64,
    },
    /// Run the Monte Carlo and mode-sum oracle checks
    Validate(Common),
    /// Print the false-entanglement baseline E_F(epsilon)
    Baseline {
        #[arg(long, value_delimiter = ',', default_value = "0.001,0.002,0.005,0.01,0.02,0.05,0.1,0.2,0.5,0.9")]
        epsilon: Vec<f64>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG heatmap output path
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    oracle_samples: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Use 2.612 for zeta(3/2) (true) or the full-precision value (false)
    #[arg(long, action = clap::ArgAction::Set)]
    paper_constants: Option<bool>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

fn load(common: &Common) -> Result<SweepConfig, Failure> {
    let text = fs::read_to_string(&common.config)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", common.config.display())))?;
    let overrides = Overrides {
        seed: common.seed,
        oracle_samples: common.oracle_samples,
        workers: common.workers,
        paper_constants: common.paper_constants,
        csv: common.out.clone(),
        svg: common.svg.clone(),
    };
    load_config(&text, &overrides).map_err(|e| fail(EXIT_CONFIG, format!("{}: {e}", common.config.display())))
}

fn in_pool<R: Send>(cfg: &SweepConfig, f: impl FnOnce() -> R + Send) -> R {
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new().num_threads(w).build().expect("thread pool").install(f),
        None => f(),
    }
}

fn sweep(common: &Common) -> Result<(), Failure> {
    let cfg = load(common)?;
    let records = run_sweep(&cfg).map_err(|e| fail(EXIT_NUMERIC, e))?;
    write_csv(&records, &cfg.csv).map_err(|e| fail(EXIT_IO, e))?;
    let flagged = records.iter().filter(|r| !r.warnings.is_empty()).count();
    eprintln!("wrote {} records to {} ({flagged} with warnings)", records.len(), cfg.csv.display());
    if let Some(svg) = &cfg.svg {
        render_heatmap(&records, svg).map_err(|e| match e {
            HeatmapError::Io(e) => fail(EXIT_IO, e),
            other => fail(EXIT_NUMERIC, other),
        })?;
        eprintln!("wrote heatmap to {}", svg.display());
    }
    Ok(())
}

fn point(common: &Common, t: f64, n: f64) -> Result<(), Failure> {
    let cfg = load(common)?;
    let records = run_points(&cfg, &[(t, n)]).map_err(|e| fail(EXIT_NUMERIC, e))?;
    println!("{}", header());
    println!("{}", format_row(&records[0]));
    Ok(())
}

fn validate(common: &Common) -> Result<(), Failure> {
    let cfg = load(common)?;
    let samples = if cfg.oracle_samples == 0 { DEFAULT_VALIDATION_SAMPLES } else { cfg.oracle_samples };
    let zeta = cfg.zeta();
    let (integrals, at_radius, rho1) = in_pool(&cfg, || {
        let integrals = integral_checks(cfg.radius, cfg.n_total, zeta, samples, cfg.seed)?;
        let at_radius = finite_separation_at_radius(cfg.radius, cfg.n_total, zeta, samples, cfg.seed)?;
        let rho1 = rho1_checks(RHO1_DENSITY, cfg.n_total, zeta)?;
        Ok::<_, bec_entangle::Error>((integrals, at_radius, rho1))
    })
    .map_err(|e| fail(EXIT_NUMERIC, e))?;

    let mut failed = 0;
    println!("integrals vs Monte Carlo ({samples} samples, pass at <= 3 standard errors)");
    println!("{:>5} {:>10} {:>16} {:>11} {:>24} {:>24} {:>8}  status", "t", "n", "quantity", "R", "closed", "monte carlo", "sigma");
    for c in &integrals {
        failed += usize::from(!c.passed());
        println!(
            "{:>5} {:>10.3e} {:>16} {:>11.3e} {:>24} {:>24} {:>8.2}  {}",
            c.t,
            c.n,
            c.quantity.name(),
            c.radius,
            format_float(c.closed),
            format_float(c.mc.value),
            c.deviation(),
            if c.passed() { "ok" } else { "FAIL" }
        );
    }
    println!("\nconstant-distance cross form at R = {:e} (informational)", cfg.radius);
    for c in &at_radius {
        println!("{:>5} {:>10.3e} closed {:>24} mc {:>24} sigma {:>10.2}", c.t, c.n, format_float(c.closed), format_float(c.mc.value), c.deviation());
    }
    let (curve, plateau) = rho1;
    println!("\nrho1 continuum vs mode sum at n = {RHO1_DENSITY:e} (pass below 1% relative)");
    for c in curve.iter().chain(std::iter::once(&plateau)) {
        failed += usize::from(!c.passed());
        println!(
            "{:>5} r/lambda {:>8.3} reference {:>24} mode sum {:>24} rel {:>10.3e}  {}",
            c.t,
            c.r / c.lambda,
            format_float(c.reference),
            format_float(c.mode_sum),
            c.relative_error(),
            if c.passed() { "ok" } else { "FAIL" }
        );
    }
    if failed > 0 {
        return Err(fail(EXIT_NUMERIC, format!("{failed} validation checks failed")));
    }
    println!("\nall validation checks passed");
    Ok(())
}

fn baseline(eps: &[f64]) -> Result<(), Failure> {
    println!("epsilon,e_false");
    for &e in eps {
        let v = false_entanglement(e).map_err(|err| fail(EXIT_CONFIG, err))?;
        println!("{},{}", format_float(e), format_float(v));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Sweep(c) => sweep(c),
        Command::Point { common, t, n } => point(common, *t, *n),
        Command::Validate(c) => validate(c),
        Command::Baseline { epsilon } => baseline(epsilon),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
