//! `gqg`: command-line front end for exact computations in generalized quantum groups.

mod cache;
mod job;
mod report;
mod run;

use cache::Cache;
use clap::Parser;
use job::{Command, JobSpec, Overrides, RawJob};
use report::Report;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Exact computations in generalized quantum groups U(χ,Π).
#[derive(Debug, Parser)]
#[command(name = "gqg", version)]
struct Cli {
    /// Command to run; may instead be given in the job file.
    #[arg(value_enum)]
    command: Option<Command>,
    /// Job file (JSON, or TOML with a .toml extension); "-" reads stdin.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cache directory; GQG_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    cap_roots: Option<usize>,
    #[arg(long)]
    cap_height: Option<u32>,
    /// Box radius for windows.
    #[arg(long = "box")]
    box_radius: Option<i32>,
    /// Named bicharacter instead of a q matrix.
    #[arg(long)]
    preset: Option<String>,
    /// Add timing and cache statistics to the report.
    #[arg(long)]
    diagnostics: bool,
}

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let raw = match &cli.job {
        Some(p) => match job::read_job(p) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => RawJob::default(),
    };
    let overrides = Overrides {
        command: cli.command,
        preset: cli.preset.clone(),
        out: cli.out.clone(),
        cache: cli.cache.clone(),
        cap_roots: cli.cap_roots,
        cap_height: cli.cap_height,
        box_radius: cli.box_radius,
    };
    let spec = match JobSpec::validate(raw, &overrides) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cache_dir = std::env::var_os("GQG_CACHE")
        .map(PathBuf::from)
        .or(spec.cache.clone());
    let mut cache = match &cache_dir {
        Some(d) => Cache::open(d),
        None => Cache::disabled(),
    };
    let (report, code) = match run::run(&spec, &mut cache) {
        Ok(r) => {
            let code = if r.passed() { 0 } else { EXIT_MATH };
            (r, code)
        }
        Err(run::RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            let r = Report {
                command: spec.command.name(),
                job: run::echo(&spec),
                error: Some(e.to_string()),
                ..Default::default()
            };
            (r, EXIT_MATH)
        }
    };
    let s = cache.stats;
    eprintln!(
        "cache: {} hits, {} misses, {} corrupt, {} written; {:.3}s",
        s.hits,
        s.misses,
        s.corrupt,
        s.writes,
        started.elapsed().as_secs_f64()
    );
    let diagnostics = cli.diagnostics.then(|| {
        json!({
            "elapsed_ms": started.elapsed().as_millis() as u64,
            "cache": { "dir": cache_dir.as_ref().map(|d| d.display().to_string()), "hits": s.hits, "misses": s.misses, "corrupt": s.corrupt, "writes": s.writes },
            "warnings": cache.warnings,
        })
    });
    let text = serde_json::to_string_pretty(&report.to_json(diagnostics))
        .expect("reports serialize")
        + "\n";
    match &spec.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
