mod config;
mod run;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use config::{Cli, RunConfig};

fn write_out(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn execute(config: &RunConfig) -> Result<bool> {
    let outcome = run::run(config)?;
    let mut json = serde_json::to_string_pretty(&outcome.report)?;
    json.push('\n');
    match &config.output {
        Some(path) => write_out(path, &json)?,
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    if let Some(path) = &config.jsonl {
        write_out(path, &run::jsonl(&outcome.report)?)?;
    }
    if let (Some(path), Some(mesh)) = (&config.off, &outcome.off) {
        write_out(path, mesh)?;
    }
    for c in outcome.report.certificates.iter().filter(|c| !c.report.pass) {
        log::error!("certificate {} ({}) failed: slack {}", c.report.name, c.scope, c.report.slack);
    }
    for v in &outcome.report.violations {
        log::error!("precondition violated: {v}");
    }
    Ok(outcome.report.all_pass)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
