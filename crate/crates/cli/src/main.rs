use clap::{Args, Parser, Subcommand};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use udw_cli::commutator::{commutator_table, write_commutator_csv};
use udw_cli::config::{load, SweepConfig};
use udw_cli::sweep::{run_point, run_sweep, write_csv, CSV_HEADER};
use udw_cli::validate::{run_acceptance, run_invariants};
use udw_core::Error;

#[derive(Parser)]
#[command(name = "udw", about = "Communication vs harvesting for two Unruh-DeWitt detectors")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// flat `key = value` config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// override a config key, e.g. --set n=5
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// output path (defaults to the config's `out`, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// one CSV row at t_ab_T
    Point(Common),
    /// CSV rows over tab_min_T..tab_max_T
    Sweep(Common),
    /// smeared commutator Im C⁻ at Δx = L over the t_AB grid
    Commutator(Common),
    /// module invariants and acceptance criteria
    Validate(Common),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Domain { .. } => 2,
        Error::Regime(_) => 3,
        Error::Accuracy { .. } | Error::Range { .. } => 4,
    }
}

fn config(c: &Common) -> Result<SweepConfig, Error> {
    let text = match &c.config {
        Some(p) => Some(
            std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    let mut cfg = load(text.as_deref(), &c.set)?;
    if c.out.is_some() {
        cfg.out = c.out.clone();
    }
    Ok(cfg)
}

fn sink(cfg: &SweepConfig) -> Result<Box<dyn Write>, Error> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Error {
    Error::Config(format!("write failed: {e}"))
}

fn run(cmd: Cmd) -> Result<bool, Error> {
    match cmd {
        Cmd::Point(c) => {
            let cfg = config(&c)?;
            let row = run_point(&cfg.pair, &cfg.opts)?;
            let mut w = sink(&cfg)?;
            writeln!(w, "{CSV_HEADER}\n{}", row.to_csv()).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            Ok(true)
        }
        Cmd::Sweep(c) => {
            let cfg = config(&c)?;
            let rows = run_sweep(&cfg.pair, &cfg.grid(), &cfg.opts);
            let mut w = sink(&cfg)?;
            write_csv(&mut w, &rows).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            Ok(true)
        }
        Cmd::Commutator(c) => {
            let cfg = config(&c)?;
            let rows = commutator_table(&cfg.pair.field, &cfg.grid(), cfg.pair.distance(), cfg.commutator_width)?;
            let mut w = sink(&cfg)?;
            write_commutator_csv(&mut w, &rows).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            Ok(true)
        }
        Cmd::Validate(c) => {
            let cfg = config(&c)?;
            let mut all = run_invariants(&cfg.opts);
            all.extend(run_acceptance(&cfg.opts));
            let mut w = sink(&cfg)?;
            for r in &all {
                writeln!(w, "{}", r.line()).map_err(io_err)?;
            }
            let failed = all.iter().filter(|r| !r.pass).count();
            writeln!(w, "{} checks, {failed} failed", all.len()).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error:{}: {e}", e.kind());
            ExitCode::from(exit_code(&e))
        }
    }
}
