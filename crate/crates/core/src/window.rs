//! Cube windows over the Voronoi tiling of a periodic packing.
//!
//! Every cell of a periodic packing is a translate of one of the motif
//! cells, so the motif cells are built once and placed by translation. Only
//! cells that straddle the window surface are clipped.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificates::{CertificateReport, MeetingSegment};
use crate::clip::{clip_to_cube, touches_cube, window_eps, ClippedCell};
use crate::constants::AVERAGE_AREA_LOWER_BOUND;
use crate::error::{CertificateError, GeometryError};
use crate::halfspace::Vec3;
use crate::metrics::{metrics, CellMetrics};
use crate::packing::PeriodicPacking;
use crate::polyhedron::ConvexPolyhedron;
use crate::segments::{classify_in_space, group_edges};

/// All quantities of the cube-window accounting for one edge length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub packing: String,
    #[serde(rename = "L")]
    pub l: f64,
    /// Balls with `B_i ⊂ C_L`.
    pub n_contained: usize,
    /// Cells with `P_i ∩ bd C_L ≠ ∅`.
    pub n_boundary: usize,
    /// Cells with `int P_i ∩ C_L ≠ ∅`.
    pub n_intersecting: usize,
    /// `Σ sarea(P_i ∩ C_L)` over contained balls.
    pub sum_clipped_sarea: f64,
    pub average_sarea: f64,
    pub f_l: f64,
    pub g_l: f64,
    /// `f(L) - sum_clipped_sarea`.
    pub delta: f64,
    /// `2·Σ_boundary sarea(P_i)`.
    pub delta_upper: f64,
    /// `Σ_boundary Σ L(e)` over full boundary cells.
    pub delta_bar_upper: f64,
    /// `(4π/3)·n_contained / L³`.
    pub density: f64,
}

impl WindowReport {
    pub fn boundary_ratio(&self) -> f64 {
        self.n_boundary as f64 / self.n_contained as f64
    }

    /// Certificates of the window accounting, including the density chain.
    pub fn certificates(&self, rel_tol: f64) -> Vec<CertificateReport> {
        let n_bound = AVERAGE_AREA_LOWER_BOUND * self.n_contained as f64;
        vec![
            CertificateReport::new("theorem-1-window", self.average_sarea, AVERAGE_AREA_LOWER_BOUND, rel_tol),
            CertificateReport::new("corollary-f-ge-g", self.f_l, self.g_l, rel_tol),
            CertificateReport::new("ineq-15-lower", self.f_l, self.sum_clipped_sarea, rel_tol),
            CertificateReport::new("ineq-15-upper", self.sum_clipped_sarea + self.delta_upper, self.f_l, rel_tol),
            CertificateReport::new("ineq-16", self.g_l + self.delta_bar_upper, n_bound, rel_tol),
            density_bound_check(self, rel_tol),
        ]
    }
}

/// `density ≤ 4π / average_sarea`: the finite-window form of the density chain.
pub fn density_bound_check(r: &WindowReport, rel_tol: f64) -> CertificateReport {
    CertificateReport::new(
        "density-chain",
        4.0 * std::f64::consts::PI / r.average_sarea,
        r.density,
        rel_tol,
    )
}

/// Reports over increasing window sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageSeries {
    pub reports: Vec<WindowReport>,
    /// Minimum average over the series, standing in for the liminf.
    pub min_average: f64,
    pub final_average: f64,
}

#[derive(Debug, Clone)]
struct MotifCell {
    poly: ConvexPolyhedron,
    metrics: CellMetrics,
    lo: Vec3,
    hi: Vec3,
    circumradius: f64,
}

/// The Voronoi tiling of a periodic packing, with one built cell per motif point.
#[derive(Debug, Clone)]
pub struct Tiling {
    packing: PeriodicPacking,
    cells: Vec<MotifCell>,
}

/// What one placed cell contributes to a window.
#[derive(Debug, Clone, Copy, Default)]
struct Contribution {
    contained: bool,
    boundary: bool,
    intersecting: bool,
    clipped_sarea: f64,
    interior_area: f64,
    interior_edge_length: f64,
    sarea: f64,
    total_edge_length: f64,
}

impl Tiling {
    pub fn new(packing: PeriodicPacking) -> Result<Self, GeometryError> {
        let cells = (0..packing.motif().len())
            .map(|j| {
                let poly = packing.voronoi_cell(j, None)?;
                let metrics = metrics(&poly)?;
                let (lo, hi) = poly.bounding_box();
                let circumradius = poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
                Ok(MotifCell { poly, metrics, lo, hi, circumradius })
            })
            .collect::<Result<_, GeometryError>>()?;
        Ok(Self { packing, cells })
    }

    pub fn packing(&self) -> &PeriodicPacking {
        &self.packing
    }

    /// Voronoi cell of motif point `j`, centered at the origin.
    pub fn motif_cell(&self, j: usize) -> &ConvexPolyhedron {
        &self.cells[j].poly
    }

    pub fn motif_metrics(&self, j: usize) -> &CellMetrics {
        &self.cells[j].metrics
    }

    /// Sum of motif cell volumes; equals the fundamental-cell volume when the
    /// cells tile space.
    pub fn fundamental_volume(&self) -> f64 {
        self.cells.iter().map(|c| c.metrics.vol).sum()
    }

    pub fn max_circumradius(&self) -> f64 {
        self.cells.iter().map(|c| c.circumradius).fold(0.0, f64::max)
    }

    /// Every placed ball center whose cell may reach `C_L`, as (motif index, center).
    fn candidates(&self, l: f64) -> Vec<(usize, Vec3)> {
        let h = l / 2.0;
        let mut out = Vec::new();
        for (j, c) in self.cells.iter().enumerate() {
            for (_, p) in self.packing.centers_in_box(j, h + c.circumradius + 1e-6) {
                out.push((j, p));
            }
        }
        out
    }

    fn contribution(&self, j: usize, center: &Vec3, l: f64) -> Result<Option<Contribution>, GeometryError> {
        let h = l / 2.0;
        let cell = &self.cells[j];
        let eps = window_eps(&cell.poly, l);
        let lo = cell.lo + center;
        let hi = cell.hi + center;
        let contained = center.iter().all(|x| x.abs() <= h - 1.0 + eps);
        let m = &cell.metrics;
        let base = Contribution {
            contained,
            sarea: m.sarea,
            total_edge_length: m.total_edge_length,
            ..Default::default()
        };

        if lo.iter().all(|x| *x > -h + eps) && hi.iter().all(|x| *x < h - eps) {
            return Ok(Some(Contribution {
                intersecting: true,
                clipped_sarea: if contained { m.sarea } else { 0.0 },
                interior_area: m.sarea,
                interior_edge_length: m.total_edge_length,
                ..base
            }));
        }
        if lo.iter().any(|x| *x > h + eps) || hi.iter().any(|x| *x < -h - eps) {
            return Ok(None);
        }

        let placed = cell.poly.translated(center);
        let touches = touches_cube(&placed, l)?;
        if !touches {
            return Ok(None);
        }
        match clip_to_cube(&placed, l) {
            Ok(c) => Ok(Some(Contribution {
                boundary: true,
                intersecting: true,
                clipped_sarea: if contained { c.sarea() } else { 0.0 },
                interior_area: c.interior_boundary_area,
                interior_edge_length: c.interior_edge_length(),
                ..base
            })),
            Err(GeometryError::EmptyIntersection) => Ok(Some(Contribution { boundary: true, ..base })),
            Err(e) => Err(e),
        }
    }

    /// Computes every window quantity for edge length `l`.
    pub fn window_report(&self, l: f64) -> Result<WindowReport, GeometryError> {
        if !l.is_finite() || l <= 0.0 {
            return Err(GeometryError::InvalidBound(l));
        }
        let contributions: Vec<Option<Contribution>> = self
            .candidates(l)
            .par_iter()
            .map(|(j, c)| self.contribution(*j, c, l))
            .collect::<Result<_, _>>()?;

        let mut r = WindowReport {
            packing: self.packing.name().to_string(),
            l,
            n_contained: 0,
            n_boundary: 0,
            n_intersecting: 0,
            sum_clipped_sarea: 0.0,
            average_sarea: 0.0,
            f_l: 0.0,
            g_l: 0.0,
            delta: 0.0,
            delta_upper: 0.0,
            delta_bar_upper: 0.0,
            density: 0.0,
        };
        let mut edge_sum = 0.0;
        for c in contributions.into_iter().flatten() {
            if c.contained {
                r.n_contained += 1;
                r.sum_clipped_sarea += c.clipped_sarea;
            }
            if c.intersecting {
                r.n_intersecting += 1;
                r.f_l += c.interior_area;
                edge_sum += c.interior_edge_length;
            }
            if c.boundary {
                r.n_boundary += 1;
                r.f_l += c.sarea - c.interior_area;
                r.delta_upper += 2.0 * c.sarea;
                r.delta_bar_upper += c.total_edge_length;
            }
        }
        if r.n_contained == 0 {
            return Err(GeometryError::EmptyWindow(l));
        }
        r.g_l = edge_sum / 3f64.sqrt();
        r.average_sarea = r.sum_clipped_sarea / r.n_contained as f64;
        r.delta = r.f_l - r.sum_clipped_sarea;
        r.density = 4.0 / 3.0 * std::f64::consts::PI * r.n_contained as f64 / l.powi(3);
        Ok(r)
    }

    /// One report per window size; `ls` must be strictly increasing.
    pub fn average_sarea_series(&self, ls: &[f64]) -> Result<AverageSeries, GeometryError> {
        if ls.is_empty() || ls.windows(2).any(|w| w[1] <= w[0]) {
            return Err(GeometryError::InvalidBound(f64::NAN));
        }
        let reports: Vec<WindowReport> = ls.iter().map(|&l| self.window_report(l)).collect::<Result<_, _>>()?;
        let min_average = reports.iter().map(|r| r.average_sarea).fold(f64::INFINITY, f64::min);
        let final_average = reports.last().map(|r| r.average_sarea).unwrap_or(f64::NAN);
        Ok(AverageSeries { reports, min_average, final_average })
    }

    /// Clipped cells `P_i ∩ C_L` with nonempty interior, in enumeration order.
    pub fn window_cells(&self, l: f64) -> Result<Vec<ClippedCell>, GeometryError> {
        let mut out = Vec::new();
        for (j, c) in self.candidates(l) {
            match clip_to_cube(&self.cells[j].poly.translated(&c), l) {
                Ok(cell) => out.push(cell),
                Err(GeometryError::EmptyIntersection) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Placed Voronoi cells whose centers lie within `radius` of the origin.
    pub fn cells_near_origin(&self, radius: f64) -> Vec<ConvexPolyhedron> {
        let mut out = Vec::new();
        for (j, c) in self.cells.iter().enumerate() {
            for (_, p) in self.packing.centers_near(j, &Vec3::zeros(), radius) {
                out.push(c.poly.translated(&p));
            }
        }
        out
    }

    /// Meeting segments of the tiling near the origin. Cells are taken within
    /// `radius`; only segments far enough inside that every incident cell is
    /// present are kept.
    pub fn sample_meeting_segments(&self, radius: f64) -> Result<Vec<MeetingSegment>, CertificateError> {
        let cells = self.cells_near_origin(radius);
        let rho = self.max_circumradius();
        let keep = radius - 2.0 * rho;
        let groups = group_edges(&cells, 1e-7);
        classify_in_space(&groups, |m| m.norm() <= keep)
    }
}

/// Convenience wrapper building the tiling on each call.
pub fn window_report(p: &PeriodicPacking, l: f64) -> Result<WindowReport, GeometryError> {
    Tiling::new(p.clone())?.window_report(l)
}

pub fn average_sarea_series(p: &PeriodicPacking, ls: &[f64]) -> Result<AverageSeries, GeometryError> {
    Tiling::new(p.clone())?.average_sarea_series(ls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{cot_sum_bound, SegmentCase};
    use crate::packing::Preset;

    fn tiling(p: Preset) -> Tiling {
        Tiling::new(PeriodicPacking::preset(p)).unwrap()
    }

    #[test]
    fn sc_window_of_ten() {
        let r = tiling(Preset::SimpleCubic).window_report(10.0).unwrap();
        assert_eq!(r.n_contained, 125);
        // contained cells are exactly the side-2 cubes inside [-5, 5]^3
        assert!((r.average_sarea - 24.0).abs() < 1e-10);
        assert!(r.average_sarea >= AVERAGE_AREA_LOWER_BOUND);
        assert!(r.f_l >= r.g_l);
        assert!((r.density - 125.0 * 4.0 / 3.0 * std::f64::consts::PI / 1000.0).abs() < 1e-12);
    }

    #[test]
    fn single_ball_window() {
        let r = tiling(Preset::SimpleCubic).window_report(4.0).unwrap();
        assert_eq!(r.n_contained, 1);
        let c = density_bound_check(&r, 1e-7);
        assert!(c.pass && c.slack > 0.3);
    }

    #[test]
    fn too_small_window_is_an_error() {
        let t = tiling(Preset::SimpleCubic);
        assert_eq!(t.window_report(1.0).unwrap_err(), GeometryError::EmptyWindow(1.0));
        assert!(t.average_sarea_series(&[10.0, 10.0]).is_err());
    }

    #[test]
    fn fundamental_domain_volume() {
        for p in Preset::ALL {
            let t = tiling(p);
            let det = t.packing().cell_volume();
            assert!((t.fundamental_volume() - det).abs() < 1e-9 * det, "{p:?}");
        }
    }

    #[test]
    fn fcc_interior_segments_are_equality_cases() {
        let segs = tiling(Preset::FaceCenteredCubic).sample_meeting_segments(8.0).unwrap();
        assert!(!segs.is_empty());
        for s in &segs {
            assert_eq!(s.case_tag, SegmentCase::Interior);
            assert_eq!(s.k(), 3);
            assert!(s.betas.iter().all(|b| (b - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-9));
            let c = cot_sum_bound(s, 1e-7).unwrap();
            assert!(c.general.slack.abs() < 1e-9);
        }
    }
}
