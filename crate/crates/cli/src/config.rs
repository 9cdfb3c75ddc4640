//! Command-line surface and the validated run configuration.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tilecert::Preset;

#[derive(Debug, Parser)]
#[command(name = "tilecert", version, about = "Surface-area certificates for convex cells and Voronoi tilings")]
pub struct Cli {
    /// Relative tolerance for certificate checks.
    #[arg(long, global = true, env = "TILECERT_TOL")]
    pub tol: Option<f64>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Also write every certificate as one JSON object per line.
    #[arg(long, global = true)]
    pub jsonl: Option<PathBuf>,

    /// Export the relevant cells as an ASCII OFF mesh.
    #[arg(long, global = true)]
    pub off: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metrics of one cell.
    CellMetrics(CellSource),
    /// Per-cell certificates of one cell.
    CellCertify(CellSource),
    /// Window report of a preset tiling for one edge length.
    TilingReport {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long = "L")]
        l: f64,
    },
    /// Window reports for a list of edge lengths.
    TilingSeries {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long = "Ls", value_delimiter = ',', required = true)]
        ls: Vec<f64>,
    },
    /// Minimum-area tangent polytope search.
    Optimize {
        #[arg(long)]
        faces: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CellSource {
    /// Polyhedron file: JSON half-spaces or vertices, or OFF.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Voronoi cell of a preset packing.
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<Preset>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

/// Where a single cell comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellInput {
    File(PathBuf),
    Preset(Preset),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    CellMetrics { cell: CellInput },
    CellCertify { cell: CellInput },
    TilingReport { preset: Preset, #[serde(rename = "L")] l: f64 },
    TilingSeries { preset: Preset, #[serde(rename = "Ls")] ls: Vec<f64> },
    Optimize { faces: usize, restarts: usize, seed: u64 },
}

/// Fully resolved and validated run settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    pub tol: f64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub jsonl: Option<PathBuf>,
    #[serde(skip)]
    pub off: Option<PathBuf>,
}

pub const MAX_FACES: usize = 64;
pub const MAX_RESTARTS: usize = 1024;
pub const MAX_L: f64 = 200.0;

fn check_l(l: f64) -> Result<()> {
    if !(l > 0.0 && l <= MAX_L) {
        bail!("window edge length {l} outside (0, {MAX_L}]");
    }
    Ok(())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let tol = cli.tol.unwrap_or(tilecert::constants::DEFAULT_CERT_TOL);
        if !(tol > 0.0 && tol < 1.0) {
            bail!("tolerance {tol} outside (0, 1)");
        }
        let cell = |s: CellSource| match (s.input, s.preset) {
            (Some(p), _) => CellInput::File(p),
            (None, Some(p)) => CellInput::Preset(p),
            (None, None) => unreachable!("clap requires one cell source"),
        };
        let task = match cli.command {
            Command::CellMetrics(s) => Task::CellMetrics { cell: cell(s) },
            Command::CellCertify(s) => Task::CellCertify { cell: cell(s) },
            Command::TilingReport { preset, l } => {
                check_l(l)?;
                Task::TilingReport { preset, l }
            }
            Command::TilingSeries { preset, ls } => {
                for &l in &ls {
                    check_l(l)?;
                }
                Task::TilingSeries { preset, ls }
            }
            Command::Optimize { faces, restarts, seed } => {
                if !(4..=MAX_FACES).contains(&faces) {
                    bail!("face count {faces} outside [4, {MAX_FACES}]");
                }
                if !(1..=MAX_RESTARTS).contains(&restarts) {
                    bail!("restart count {restarts} outside [1, {MAX_RESTARTS}]");
                }
                Task::Optimize { faces, restarts, seed }
            }
        };
        Ok(Self { task, tol, output: cli.output, jsonl: cli.jsonl, off: cli.off })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("tilecert").chain(args.iter().copied()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn series_list() {
        let c = parse(&["tiling-series", "--preset", "fcc", "--Ls", "10,20,40", "--tol", "1e-6"]).unwrap();
        assert_eq!(c.task, Task::TilingSeries { preset: Preset::FaceCenteredCubic, ls: vec![10.0, 20.0, 40.0] });
        assert_eq!(c.tol, 1e-6);
    }

    #[test]
    fn ranges_are_checked() {
        assert!(parse(&["optimize", "--faces", "3"]).is_err());
        assert!(parse(&["optimize", "--faces", "6", "--restarts", "0"]).is_err());
        assert!(parse(&["tiling-report", "--preset", "sc", "--L", "-1"]).is_err());
        assert!(parse(&["cell-metrics", "--tol", "0", "--preset", "sc"]).is_err());
        assert!(parse(&["cell-metrics"]).is_err());
        assert!(parse(&["cell-metrics", "--preset", "sc", "--input", "x.json"]).is_err());
    }
}
