use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gamma_acyclic::harness::{run, tally, Config, Suite, DEFAULT_SEED};
use gamma_acyclic::Error;

#[derive(Parser)]
#[command(name = "verify", about = "Exact verification suites for gamma functions on GL(n) over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run suites from a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Restrict to these suites (repeatable); defaults to the config's list.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Write the report here; `.csv` selects CSV, anything else JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Record wall-clock times (makes reports differ between runs).
        #[arg(long)]
        timings: bool,
    },
    /// List the available suites.
    ListSuites,
    /// Describe what a suite checks.
    Explain { suite: String },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::ListSuites => {
            for s in Suite::ALL {
                println!("{:<10} {}", s.name(), s.summary());
            }
            Ok(true)
        }
        Cmd::Explain { suite } => {
            let s = Suite::parse(&suite)?;
            println!("{}\n\n{}", s.name(), s.explain());
            Ok(true)
        }
        Cmd::Run { config, suites, out, jobs, seed, timings } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", config.display())))?;
            let cfg = Config::from_json(&text)?;
            let only = suites.iter().map(|s| Suite::parse(s)).collect::<Result<Vec<_>, _>>()?;
            for s in &only {
                s.applicable(&cfg)?;
            }
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build_global()
                    .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
            }
            let report = run(&cfg, &only, seed, timings)?;
            let csv = out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
            let body = if csv { report.to_csv()? } else { report.to_json()? };
            match &out {
                Some(p) => std::fs::write(p, body)
                    .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", p.display())))?,
                None => print!("{body}"),
            }
            for s in &report.suites {
                for c in s.checks.iter().filter(|c| !c.passed()) {
                    eprintln!("{} {}: {:?} {}", s.suite, c.check, c.status, c.detail);
                }
            }
            let t = tally(&report);
            eprintln!(
                "{}: {} pass, {} fail, {} skip, {} error",
                if report.pass { "PASS" } else { "FAIL" },
                t[0].1,
                t[1].1,
                t[2].1,
                t[3].1
            );
            Ok(report.pass)
        }
    }
}
