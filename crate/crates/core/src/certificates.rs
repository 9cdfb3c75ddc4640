//! Numerical certificates for the inequalities relating surface area,
//! volume, edge curvature and total edge length of cells that contain a unit
//! ball, and for partitions of a cube into such cells.
//!
//! Every check returns a [`CertificateReport`] with `slack = lhs - rhs`. The
//! tolerance is relative: a report passes when `slack ≥ -tol` with
//! `tol = rel_tol · max(|rhs|, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::constants::{AVERAGE_AREA_LOWER_BOUND, CUBE_EDGE_LENGTH_BOUND, DEFAULT_CERT_TOL, EPS_ANGLE};
use crate::error::CertificateError;
use crate::halfspace::Vec3;
use crate::metrics::{metrics, CellMetrics};
use crate::polyhedron::ConvexPolyhedron;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub tol: f64,
}

impl CertificateReport {
    /// Builds a report for `lhs ≥ rhs` with relative tolerance `rel_tol`.
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let tol = rel_tol * rhs.abs().max(1.0);
        let slack = lhs - rhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            pass: slack >= -tol,
            tol,
        }
    }

    /// `slack / max(|rhs|, 1)`.
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.rhs.abs().max(1.0)
    }
}

fn require_unit_ball(m: &CellMetrics, rel_tol: f64) -> Result<(), CertificateError> {
    if m.inradius < 1.0 - rel_tol {
        return Err(CertificateError::PreconditionViolated(format!(
            "inradius {} < 1: the cell contains no unit ball",
            m.inradius
        )));
    }
    Ok(())
}

/// `sarea² ≥ 3·vol·ecurv`.
pub fn check_fejes_toth(m: &CellMetrics, rel_tol: f64) -> CertificateReport {
    CertificateReport::new("ineq-1", m.sarea * m.sarea, 3.0 * m.vol * m.ecurv, rel_tol)
}

/// `vol ≥ sarea/3` for a cell containing a unit ball.
pub fn check_containment_volume(m: &CellMetrics, rel_tol: f64) -> Result<CertificateReport, CertificateError> {
    require_unit_ball(m, rel_tol)?;
    Ok(CertificateReport::new("ineq-3", m.vol, m.sarea / 3.0, rel_tol))
}

/// `sarea ≥ ecurv` for a cell containing a unit ball.
pub fn check_area_dominates_ecurv(m: &CellMetrics, rel_tol: f64) -> Result<CertificateReport, CertificateError> {
    require_unit_ball(m, rel_tol)?;
    Ok(CertificateReport::new("ineq-4", m.sarea, m.ecurv, rel_tol))
}

/// Total edge length is at least that of the cube circumscribed about the unit ball.
pub fn check_besicovitch_eggleston(m: &CellMetrics, rel_tol: f64) -> Result<CertificateReport, CertificateError> {
    require_unit_ball(m, rel_tol)?;
    Ok(CertificateReport::new(
        "BE-edge-length",
        m.total_edge_length,
        CUBE_EDGE_LENGTH_BOUND,
        rel_tol,
    ))
}

/// Outcome of certifying one cell: reports that could be evaluated plus the
/// precondition failures of those that could not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCertification {
    pub reports: Vec<CertificateReport>,
    pub violations: Vec<String>,
}

impl CellCertification {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty() && self.reports.iter().all(|r| r.pass)
    }
}

/// Runs the four per-cell certificates.
pub fn certify_cell(m: &CellMetrics, rel_tol: f64) -> CellCertification {
    let mut reports = vec![check_fejes_toth(m, rel_tol)];
    let mut violations = Vec::new();
    for r in [
        check_containment_volume(m, rel_tol),
        check_area_dominates_ecurv(m, rel_tol),
        check_besicovitch_eggleston(m, rel_tol),
    ] {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => violations.push(e.to_string()),
        }
    }
    CellCertification { reports, violations }
}

/// Where a segment shared by several cells sits relative to the container cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentCase {
    /// On an edge of the cube.
    #[serde(rename = "A_cube_edge")]
    CubeEdge,
    /// In the relative interior of a cube face or of a cell face.
    #[serde(rename = "B_face_interior")]
    FaceInterior,
    /// Inside the cube, not interior to any face.
    #[serde(rename = "C_interior")]
    Interior,
}

impl SegmentCase {
    /// Sum of the inner dihedral angles around the segment.
    pub fn angle_total(&self) -> f64 {
        match self {
            SegmentCase::CubeEdge => PI / 2.0,
            SegmentCase::FaceInterior => PI,
            SegmentCase::Interior => 2.0 * PI,
        }
    }

    pub fn min_cells(&self) -> usize {
        match self {
            SegmentCase::CubeEdge => 1,
            SegmentCase::FaceInterior => 2,
            SegmentCase::Interior => 3,
        }
    }

    /// `k·cot(total/(2k))`: the value of `Σ cot(β_i/2)` at equal angles.
    pub fn sharp_bound(&self, k: usize) -> f64 {
        let k = k as f64;
        k / (self.angle_total() / (2.0 * k)).tan()
    }
}

/// A segment along which `k` cells meet with inner dihedral angles `betas`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeetingSegment {
    pub case_tag: SegmentCase,
    pub betas: Vec<f64>,
}

impl MeetingSegment {
    /// Checks the cell count and the angle range; the angle sum is checked by
    /// [`cot_sum_bound`].
    pub fn new(case_tag: SegmentCase, betas: Vec<f64>) -> Result<Self, CertificateError> {
        if betas.len() < case_tag.min_cells() {
            return Err(CertificateError::InvalidSegment(format!(
                "{case_tag:?} needs at least {} cells, got {}",
                case_tag.min_cells(),
                betas.len()
            )));
        }
        if let Some(b) = betas.iter().find(|b| !(**b > 0.0 && **b < PI)) {
            return Err(CertificateError::InvalidSegment(format!("dihedral angle {b} outside (0, π)")));
        }
        Ok(Self { case_tag, betas })
    }

    pub fn k(&self) -> usize {
        self.betas.len()
    }
}

/// The general `k/√3` bound and the sharper case-specific bound for one segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotSumCertificate {
    pub general: CertificateReport,
    pub case_specific: CertificateReport,
}

/// `Σ cot(β_i/2) ≥ k/√3`, plus `Σ cot(β_i/2) ≥ k·cot(total/(2k))`.
pub fn cot_sum_bound(seg: &MeetingSegment, rel_tol: f64) -> Result<CotSumCertificate, CertificateError> {
    let total = seg.case_tag.angle_total();
    let sum: f64 = seg.betas.iter().sum();
    if (sum - total).abs() > EPS_ANGLE {
        return Err(CertificateError::CaseSumMismatch { expected: total, actual: sum });
    }
    let k = seg.k();
    let lhs: f64 = seg.betas.iter().map(|b| 1.0 / (b / 2.0).tan()).sum();
    Ok(CotSumCertificate {
        general: CertificateReport::new("ineq-cot-sum", lhs, k as f64 / 3f64.sqrt(), rel_tol),
        case_specific: CertificateReport::new(
            format!("ineq-cot-sum-{:?}", seg.case_tag),
            lhs,
            seg.case_tag.sharp_bound(k),
            rel_tol,
        ),
    })
}

/// The partition-level certificates for cells tiling a cube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Certificate {
    /// `Σ sarea ≥ (24/√3)·n`.
    pub main: CertificateReport,
    /// `Σ sarea ≥ (1/√3)·Σ total edge length`.
    pub aggregate: CertificateReport,
    pub volume_sum: f64,
    pub sample_points: usize,
}

/// Points sampled for the pairwise interior-disjointness check.
pub const PARTITION_SAMPLES: usize = 100_000;

/// Certifies that `cells`, which must tile the origin-centered cube of side
/// `cube_side`, have total surface area at least `(24/√3)·n`.
///
/// The partition itself is checked by volume sum (1e-6 relative) and by
/// sampling points of the cube that may lie strictly inside at most one cell.
pub fn theorem2_certificate(
    cells: &[ConvexPolyhedron],
    cube_side: f64,
    rel_tol: f64,
    seed: u64,
) -> Result<Theorem2Certificate, CertificateError> {
    if cells.is_empty() {
        return Err(CertificateError::NotAPartition("no cells".into()));
    }
    let ms: Vec<CellMetrics> = cells.iter().map(metrics).collect::<Result<_, _>>()?;
    let volume_sum: f64 = ms.iter().map(|m| m.vol).sum();
    let cube_vol = cube_side.powi(3);
    if (volume_sum - cube_vol).abs() > 1e-6 * cube_vol {
        return Err(CertificateError::NotAPartition(format!(
            "cell volumes sum to {volume_sum}, cube volume is {cube_vol}"
        )));
    }
    let h = cube_side / 2.0;
    let margin = 1e-9 * h.max(1.0);
    for (i, c) in cells.iter().enumerate() {
        if c.vertices().iter().any(|v| v.iter().any(|x| x.abs() > h + margin)) {
            return Err(CertificateError::NotAPartition(format!("cell {i} leaves the cube")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PARTITION_SAMPLES {
        let p = Vec3::new(rng.gen_range(-h..h), rng.gen_range(-h..h), rng.gen_range(-h..h));
        let inside = cells.iter().filter(|c| c.contains_point(&p, -margin)).count();
        if inside > 1 {
            return Err(CertificateError::NotAPartition(format!("point {p:?} lies inside {inside} cells")));
        }
    }
    for (i, m) in ms.iter().enumerate() {
        require_unit_ball(m, rel_tol).map_err(|e| match e {
            CertificateError::PreconditionViolated(s) => CertificateError::PreconditionViolated(format!("cell {i}: {s}")),
            other => other,
        })?;
    }
    let total_area: f64 = ms.iter().map(|m| m.sarea).sum();
    let total_edges: f64 = ms.iter().map(|m| m.total_edge_length).sum();
    Ok(Theorem2Certificate {
        main: CertificateReport::new(
            "theorem-2",
            total_area,
            AVERAGE_AREA_LOWER_BOUND * cells.len() as f64,
            rel_tol,
        ),
        aggregate: CertificateReport::new("ineq-5", total_area, total_edges / 3f64.sqrt(), rel_tol),
        volume_sum,
        sample_points: PARTITION_SAMPLES,
    })
}

/// Upper bounds implied by a uniform diameter bound `d` on the cells of a
/// normal tiling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityBounds {
    /// Surface area: `(3/2)·π·d²`.
    pub area: f64,
    /// Face count: `8d³ - 1`.
    pub faces: f64,
    /// Edge count: `24d³ - 9`.
    pub edges: f64,
    /// Total edge length: `24d⁴ - 9d`.
    pub edge_length: f64,
}

pub fn normality_bounds(d: f64) -> Result<NormalityBounds, CertificateError> {
    if !d.is_finite() || d < 2.0 {
        return Err(CertificateError::InvalidDiameter(d));
    }
    Ok(NormalityBounds {
        area: 1.5 * PI * d * d,
        faces: 8.0 * d.powi(3) - 1.0,
        edges: 24.0 * d.powi(3) - 9.0,
        edge_length: 24.0 * d.powi(4) - 9.0 * d,
    })
}

/// Default relative tolerance, overridable through `TILECERT_TOL`.
pub fn default_tolerance() -> f64 {
    std::env::var("TILECERT_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
        .unwrap_or(DEFAULT_CERT_TOL)
}
