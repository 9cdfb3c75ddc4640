//! Executes a [`RunConfig`] and assembles its report.

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use tilecert::certificates::{certify_cell, CertificateReport};
use tilecert::constants::{
    AVERAGE_AREA_LOWER_BOUND, BRAKKE_FOAM_AREA, REGULAR_DODECAHEDRON_AREA, RHOMBIC_DODECAHEDRON_AREA,
};
use tilecert::io::{parse_polyhedron, to_off};
use tilecert::{metrics, minimize_area, ConvexPolyhedron, PeriodicPacking, Tiling};

use crate::config::{CellInput, RunConfig, Task};

/// A certificate together with what it was evaluated on.
#[derive(Debug, Clone, Serialize)]
pub struct ScopedCertificate {
    pub scope: String,
    #[serde(flatten)]
    pub report: CertificateReport,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub result: Value,
    pub certificates: Vec<ScopedCertificate>,
    /// Preconditions that kept a certificate from being evaluated.
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
    pub all_pass: bool,
}

/// Everything a run produces, before anything is written.
pub struct Outcome {
    pub report: Report,
    pub off: Option<String>,
}

fn load_cell(input: &CellInput, warnings: &mut Vec<String>) -> Result<ConvexPolyhedron> {
    match input {
        CellInput::File(path) => {
            let parsed = parse_polyhedron(path).with_context(|| format!("reading {}", path.display()))?;
            warnings.extend(parsed.warnings);
            Ok(parsed.polyhedron)
        }
        CellInput::Preset(p) => Ok(PeriodicPacking::preset(*p).voronoi_cell(0, None)?),
    }
}

fn scoped(scope: &str, reports: impl IntoIterator<Item = CertificateReport>) -> Vec<ScopedCertificate> {
    reports
        .into_iter()
        .map(|report| ScopedCertificate { scope: scope.to_string(), report })
        .collect()
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let tol = config.tol;
    let mut warnings = Vec::new();
    let mut certificates = Vec::new();
    let mut violations = Vec::new();
    let mut off = None;
    let want_off = config.off.is_some();

    let result = match &config.task {
        Task::CellMetrics { cell } => {
            let p = load_cell(cell, &mut warnings)?;
            if want_off {
                off = Some(to_off([&p]));
            }
            serde_json::to_value(metrics(&p)?)?
        }
        Task::CellCertify { cell } => {
            let p = load_cell(cell, &mut warnings)?;
            let m = metrics(&p)?;
            let c = certify_cell(&m, tol);
            certificates.extend(scoped("cell", c.reports));
            violations.extend(c.violations);
            if want_off {
                off = Some(to_off([&p]));
            }
            serde_json::to_value(m)?
        }
        Task::TilingReport { preset, l } => {
            let tiling = Tiling::new(PeriodicPacking::preset(*preset))?;
            let r = tiling.window_report(*l)?;
            certificates.extend(scoped(&format!("L={l}"), r.certificates(tol)));
            if want_off {
                let cells: Vec<ConvexPolyhedron> = tiling.window_cells(*l)?.into_iter().map(|c| c.cell).collect();
                off = Some(to_off(&cells));
            }
            serde_json::to_value(r)?
        }
        Task::TilingSeries { preset, ls } => {
            let tiling = Tiling::new(PeriodicPacking::preset(*preset))?;
            let series = tiling.average_sarea_series(ls)?;
            for r in &series.reports {
                certificates.extend(scoped(&format!("L={}", r.l), r.certificates(tol)));
            }
            certificates.extend(scoped(
                "series",
                [CertificateReport::new("theorem-1-min-average", series.min_average, AVERAGE_AREA_LOWER_BOUND, tol)],
            ));
            if want_off {
                let l = ls.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let cells: Vec<ConvexPolyhedron> = tiling.window_cells(l)?.into_iter().map(|c| c.cell).collect();
                off = Some(to_off(&cells));
            }
            serde_json::to_value(series)?
        }
        Task::Optimize { faces, restarts, seed } => {
            let r = minimize_area(*faces, *restarts, *seed)?;
            let p = r.best_params.polytope()?;
            let m = metrics(&p)?;
            let c = certify_cell(&m, tol);
            certificates.extend(scoped("best", c.reports));
            violations.extend(c.violations);
            certificates.extend(scoped(
                "best",
                [CertificateReport::new("single-cell-theorem-1", r.best_area, AVERAGE_AREA_LOWER_BOUND, tol)],
            ));
            if want_off {
                off = Some(to_off([&p]));
            }
            serde_json::json!({
                "optimization": r,
                "best_metrics": m,
                "reference": {
                    "regular_dodecahedron": REGULAR_DODECAHEDRON_AREA,
                    "rhombic_dodecahedron": RHOMBIC_DODECAHEDRON_AREA,
                    "brakke_foam": BRAKKE_FOAM_AREA,
                },
            })
        }
    };

    let all_pass = violations.is_empty() && certificates.iter().all(|c| c.report.pass);
    Ok(Outcome {
        report: Report { config: config.clone(), result, certificates, violations, warnings, all_pass },
        off,
    })
}

/// One JSON object per certificate line.
pub fn jsonl(report: &Report) -> Result<String> {
    let mut out = String::new();
    for c in &report.certificates {
        out.push_str(&serde_json::to_string(c)?);
        out.push('\n');
    }
    Ok(out)
}
