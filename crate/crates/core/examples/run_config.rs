//! Runs the verification suites for a JSON config, as `verify run` does.

use gamma_acyclic::harness::{run, Config, DEFAULT_SEED};

fn main() -> gamma_acyclic::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "configs/gl2_std_q3.json".into());
    let text = std::fs::read_to_string(&path).map_err(|e| gamma_acyclic::Error::ConfigInvalid(e.to_string()))?;
    let cfg = Config::from_json(&text)?;
    let report = run(&cfg, &[], DEFAULT_SEED, false)?;
    for s in &report.suites {
        for c in &s.checks {
            println!("{:<10} {:<32} {:?}  {}", s.suite, c.check, c.status, c.detail);
        }
    }
    println!("overall: {}", if report.pass { "pass" } else { "fail" });
    Ok(())
}
