use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use isogate::gatefinder::find_gate_groups;
use isogate::modcurve::{default_primes, named_curve, torsion_bound_cyclotomic};
use isogate::modfield::PrimeModulus;
use isogate::ratcurves::{disc_square_class_of_j, two_division_cubic, ExactRational};
use isogate_cli::claims::{registry, run_all, run_claim, ClaimReport, Status};
use isogate_cli::config::Config;
use serde_json::json;

#[derive(Parser)]
#[command(name = "isogate", version, about = "Checks the finite computations behind r-isogeny classification over Q(ζ_r)")]
struct Cli {
    /// TOML file overriding prime lists and search bounds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one claim, or all of them.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        claim: Option<String>,
        #[arg(long)]
        all: bool,
        /// Comma-separated primes, replacing the claim's defaults.
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        r: Option<Vec<u32>>,
        /// Write the report(s) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for subgroup classes.
    Search {
        #[command(subcommand)]
        what: SearchKind,
    },
    /// Elliptic curve queries by j-invariant.
    Curves {
        #[command(subcommand)]
        what: CurveQuery,
    },
    /// Upper bound on torsion of a named curve over Q(ζ_r).
    TorsionBound {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        r: u32,
    },
    /// List registered claims.
    List,
}

#[derive(Subcommand)]
enum SearchKind {
    /// Subgroups of GL₂(F_r) with no fixed line whose SL₂ part has one.
    GateGroups {
        #[arg(long)]
        r: u32,
    },
}

#[derive(Subcommand)]
enum CurveQuery {
    /// Square class of the discriminant of a curve with the given j.
    DiscClass {
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn prime(r: u32) -> Result<PrimeModulus> {
    Ok(PrimeModulus::new(r as i64)?)
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(())
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}

fn print_table(reports: &[ClaimReport]) {
    let width = reports.iter().map(|r| r.claim_id.len()).max().unwrap_or(5).max(5);
    println!("{:<width$}  {:<12}  {:>10}", "claim", "status", "ms");
    for r in reports {
        println!("{:<width$}  {:<12}  {:>10}", r.claim_id, status_str(r.status), r.elapsed_ms);
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    println!(
        "{} pass, {} fail, {} inconclusive",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Inconclusive)
    );
}

fn run(cli: Cli) -> Result<bool> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Verify { claim: Some(id), r, json, .. } => {
            let report = run_claim(&id, r.as_deref(), &config)?;
            print_table(std::slice::from_ref(&report));
            if report.status != Status::Pass {
                println!("expected: {}", report.expected);
                println!("computed: {}", report.computed);
            }
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            Ok(report.status == Status::Pass)
        }
        Command::Verify { json, .. } => {
            let reports = run_all(&config);
            print_table(&reports);
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            Ok(reports.iter().all(|r| r.status != Status::Fail))
        }
        Command::Search { what: SearchKind::GateGroups { r } } => {
            let res = find_gate_groups(prime(r)?)?;
            print_json(&serde_json::to_value(res.summary())?)?;
            Ok(true)
        }
        Command::Curves { what: CurveQuery::DiscClass { j } } => {
            let j: ExactRational = j.parse()?;
            let class = disc_square_class_of_j(&j)?;
            let cubic = two_division_cubic(&j)?;
            print_json(&json!({
                "j": j,
                "disc_class": class,
                "two_division": { "shape": cubic.shape, "disc_class": cubic.disc_class, "rational_roots": cubic.rational_roots },
            }))?;
            Ok(true)
        }
        Command::TorsionBound { curve, r } => {
            let c = named_curve(&curve)?;
            let r = prime(r)?;
            let qs = match config.primes.get(&c.label) {
                Some(list) => list.clone(),
                None => default_primes(&c.model, r, config.prime_count)?,
            };
            let rep = torsion_bound_cyclotomic(c, r, &qs, config.height_bound)?;
            print_json(&serde_json::to_value(&rep)?)?;
            Ok(true)
        }
        Command::List => {
            for c in registry() {
                let rs = if c.takes_r() { format!(" r={:?}", c.default_r) } else { String::new() };
                println!("{:<24} {}{rs}", c.id, c.summary);
            }
            Ok(true)
        }
    }
}
