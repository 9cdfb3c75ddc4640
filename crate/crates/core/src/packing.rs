//! Periodic unit-ball packings and their Voronoi cells.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};
use crate::metrics::{surface_area, volume};
use crate::polyhedron::{intersect_halfspaces, ConvexPolyhedron, geom_eps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "SC")]
    SimpleCubic,
    #[serde(rename = "FCC")]
    FaceCenteredCubic,
    #[serde(rename = "BCC")]
    BodyCenteredCubic,
    #[serde(rename = "HCP")]
    HexagonalClosePacked,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::SimpleCubic,
        Preset::FaceCenteredCubic,
        Preset::BodyCenteredCubic,
        Preset::HexagonalClosePacked,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Preset::SimpleCubic => "SC",
            Preset::FaceCenteredCubic => "FCC",
            Preset::BodyCenteredCubic => "BCC",
            Preset::HexagonalClosePacked => "HCP",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| GeometryError::UnknownPreset(s.to_string()))
    }
}

/// Lattice basis (columns are lattice vectors) plus the ball centers of one
/// fundamental cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPacking {
    basis: Matrix3<f64>,
    motif: Vec<Vec3>,
    name: String,
}

impl PeriodicPacking {
    /// Validates non-singularity and that no two balls overlap.
    pub fn new(basis: Matrix3<f64>, motif: Vec<Vec3>, name: impl Into<String>) -> Result<Self, GeometryError> {
        if motif.is_empty() {
            return Err(GeometryError::InvalidPacking("empty motif".into()));
        }
        let scale = basis.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
        let det = basis.determinant();
        if !det.is_finite() || det.abs() <= 1e-9 * scale.powi(3) {
            return Err(GeometryError::InvalidPacking(format!("singular basis (det {det})")));
        }
        let p = Self { basis, motif, name: name.into() };
        let dmin = p.min_center_distance();
        if dmin < 2.0 - geom_eps(scale) {
            return Err(GeometryError::InvalidPacking(format!(
                "centers at distance {dmin} < 2: unit balls overlap"
            )));
        }
        Ok(p)
    }

    pub fn preset(which: Preset) -> Self {
        let (basis, motif) = match which {
            Preset::SimpleCubic => (Matrix3::identity() * 2.0, vec![Vec3::zeros()]),
            Preset::FaceCenteredCubic => {
                let a = 2.0 * 2f64.sqrt();
                let h = a / 2.0;
                (
                    Matrix3::identity() * a,
                    vec![
                        Vec3::zeros(),
                        Vec3::new(h, h, 0.0),
                        Vec3::new(h, 0.0, h),
                        Vec3::new(0.0, h, h),
                    ],
                )
            }
            Preset::BodyCenteredCubic => {
                let a = 4.0 / 3f64.sqrt();
                (Matrix3::identity() * a, vec![Vec3::zeros(), Vec3::repeat(a / 2.0)])
            }
            Preset::HexagonalClosePacked => {
                let c = 2.0 * (8.0f64 / 3.0).sqrt();
                let basis = Matrix3::from_columns(&[
                    Vec3::new(2.0, 0.0, 0.0),
                    Vec3::new(1.0, 3f64.sqrt(), 0.0),
                    Vec3::new(0.0, 0.0, c),
                ]);
                (basis, vec![Vec3::zeros(), Vec3::new(1.0, 1.0 / 3f64.sqrt(), c / 2.0)])
            }
        };
        Self { basis, motif, name: which.tag().to_string() }
    }

    pub fn basis(&self) -> &Matrix3<f64> {
        &self.basis
    }

    pub fn motif(&self) -> &[Vec3] {
        &self.motif
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Volume of the fundamental cell.
    pub fn cell_volume(&self) -> f64 {
        self.basis.determinant().abs()
    }

    pub fn density(&self) -> f64 {
        self.motif.len() as f64 * 4.0 / 3.0 * std::f64::consts::PI / self.cell_volume()
    }

    pub fn lattice_point(&self, n: [i64; 3]) -> Vec3 {
        self.basis * Vec3::new(n[0] as f64, n[1] as f64, n[2] as f64)
    }

    /// Translates `n` (lattice coordinates) of motif point `j` whose center is
    /// within distance `r` of `origin`, in lexicographic order of `n`.
    pub fn centers_near(&self, j: usize, origin: &Vec3, r: f64) -> Vec<([i64; 3], Vec3)> {
        let rel = origin - self.motif[j];
        let ranges = self.index_ranges(&rel, r);
        let mut out = Vec::new();
        for a in ranges[0].0..=ranges[0].1 {
            for b in ranges[1].0..=ranges[1].1 {
                for c in ranges[2].0..=ranges[2].1 {
                    let p = self.lattice_point([a, b, c]) + self.motif[j];
                    if (p - origin).norm() <= r {
                        out.push(([a, b, c], p));
                    }
                }
            }
        }
        out
    }

    /// Translates of motif point `j` with every coordinate in `[-h, h]`.
    pub fn centers_in_box(&self, j: usize, h: f64) -> Vec<([i64; 3], Vec3)> {
        let rel = -self.motif[j];
        // a box of half-width h sits inside the ball of radius h√3
        let ranges = self.index_ranges(&rel, h * 3f64.sqrt());
        let mut out = Vec::new();
        for a in ranges[0].0..=ranges[0].1 {
            for b in ranges[1].0..=ranges[1].1 {
                for c in ranges[2].0..=ranges[2].1 {
                    let p = self.lattice_point([a, b, c]) + self.motif[j];
                    if p.iter().all(|x| x.abs() <= h) {
                        out.push(([a, b, c], p));
                    }
                }
            }
        }
        out
    }

    /// Index bounds covering the ball of radius `r` about `rel` in lattice coordinates.
    fn index_ranges(&self, rel: &Vec3, r: f64) -> [(i64, i64); 3] {
        let inv = self.basis.try_inverse().expect("basis is non-singular");
        let center = inv * rel;
        let mut out = [(0, 0); 3];
        for k in 0..3 {
            // |row_k(inv)| bounds how far the k-th coordinate moves per unit length
            let reach = inv.row(k).norm() * r;
            out[k] = ((center[k] - reach).floor() as i64, (center[k] + reach).ceil() as i64);
        }
        out
    }

    /// Smallest distance between two distinct centers of the infinite packing.
    pub fn min_center_distance(&self) -> f64 {
        let scale = self.basis.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut best = f64::INFINITY;
        for (i, oi) in self.motif.iter().enumerate() {
            for j in 0..self.motif.len() {
                for (n, p) in self.centers_near(j, oi, 2.0 * scale) {
                    if i == j && n == [0, 0, 0] {
                        continue;
                    }
                    best = best.min((p - oi).norm());
                }
            }
        }
        best
    }

    /// Voronoi cell of motif point `center_index`, in coordinates centered at
    /// that ball (translate by [`Self::motif`] to place it).
    ///
    /// With `cutoff = None` the neighbour radius starts at twice the largest
    /// basis-vector length and grows until it reaches twice the cell's
    /// circumradius. Either way the result is checked against a cell built
    /// from twice the cutoff.
    pub fn voronoi_cell(&self, center_index: usize, cutoff: Option<f64>) -> Result<ConvexPolyhedron, GeometryError> {
        if center_index >= self.motif.len() {
            return Err(GeometryError::InvalidPacking(format!("no motif point {center_index}")));
        }
        let mut r = match cutoff {
            Some(r) if r > 0.0 && r.is_finite() => r,
            Some(r) => return Err(GeometryError::InvalidBound(r)),
            None => 2.0 * self.basis.column_iter().map(|c| c.norm()).fold(0.0, f64::max),
        };
        let cell = loop {
            let cell = self.cell_with_cutoff(center_index, r)?;
            let circumradius = cell.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
            if cutoff.is_some() || r >= 2.0 * circumradius - cell.eps() {
                break cell;
            }
            r = 2.0 * circumradius;
        };
        let doubled = self.cell_with_cutoff(center_index, 2.0 * r)?;
        if !same_cell(&cell, &doubled) {
            return Err(GeometryError::CutoffTooSmall(r));
        }
        Ok(cell)
    }

    fn cell_with_cutoff(&self, i: usize, r: f64) -> Result<ConvexPolyhedron, GeometryError> {
        let oi = self.motif[i];
        let mut hs = Vec::new();
        for j in 0..self.motif.len() {
            for (n, p) in self.centers_near(j, &oi, r) {
                if i == j && n == [0, 0, 0] {
                    continue;
                }
                let d = p - oi;
                let len = d.norm();
                hs.push(HalfSpace { normal: d / len, offset: len / 2.0 });
            }
        }
        if hs.len() < 4 {
            return Err(GeometryError::CutoffTooSmall(r));
        }
        let p = intersect_halfspaces(&hs, 2.0 * r + 1.0)?;
        if !p.is_intrinsically_bounded() {
            return Err(GeometryError::CutoffTooSmall(r));
        }
        Ok(p)
    }
}

fn same_cell(a: &ConvexPolyhedron, b: &ConvexPolyhedron) -> bool {
    let tol = 10.0 * a.eps().max(b.eps());
    a.vertices().len() == b.vertices().len()
        && (volume(a) - volume(b)).abs() <= tol * volume(a).abs().max(1.0)
        && (surface_area(a) - surface_area(b)).abs() <= tol * surface_area(a).max(1.0)
        && a.vertices().iter().all(|v| b.vertices().iter().any(|w| (v - w).norm() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::metrics;

    #[test]
    fn preset_geometry() {
        let sc = PeriodicPacking::preset(Preset::SimpleCubic);
        assert_eq!(sc.motif().len(), 1);
        assert_eq!(*sc.basis(), Matrix3::identity() * 2.0);
        for p in Preset::ALL {
            let pk = PeriodicPacking::preset(p);
            assert!((pk.min_center_distance() - 2.0).abs() < 1e-12, "{p:?}");
        }
        let fcc = PeriodicPacking::preset(Preset::FaceCenteredCubic);
        assert_eq!(fcc.motif().len(), 4);
        assert!((fcc.basis()[(0, 0)] - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(PeriodicPacking::preset(Preset::HexagonalClosePacked).motif().len(), 2);
    }

    #[test]
    fn preset_names_parse() {
        assert_eq!("fcc".parse::<Preset>().unwrap(), Preset::FaceCenteredCubic);
        assert!(matches!("xyz".parse::<Preset>(), Err(GeometryError::UnknownPreset(_))));
    }

    #[test]
    fn densities() {
        let pi = std::f64::consts::PI;
        let d = |p| PeriodicPacking::preset(p).density();
        assert!((d(Preset::SimpleCubic) - pi / 6.0).abs() < 1e-14);
        assert!((d(Preset::FaceCenteredCubic) - pi / 18f64.sqrt()).abs() < 1e-14);
        assert!((d(Preset::HexagonalClosePacked) - pi / 18f64.sqrt()).abs() < 1e-14);
        assert!((d(Preset::BodyCenteredCubic) - pi * 3f64.sqrt() / 8.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_overlap_and_singular_basis() {
        let overlap = PeriodicPacking::new(Matrix3::identity() * 1.5, vec![Vec3::zeros()], "x");
        assert!(matches!(overlap, Err(GeometryError::InvalidPacking(_))));
        let mut b = Matrix3::identity() * 2.0;
        b.set_column(2, &Vec3::new(2.0, 0.0, 0.0));
        assert!(PeriodicPacking::new(b, vec![Vec3::zeros()], "x").is_err());
    }

    #[test]
    fn voronoi_cells_of_presets() {
        let area = |p, i| metrics(&PeriodicPacking::preset(p).voronoi_cell(i, None).unwrap()).unwrap().sarea;
        let s2 = 12.0 * 2f64.sqrt();
        assert!((area(Preset::SimpleCubic, 0) - 24.0).abs() < 1e-12);
        assert!((area(Preset::FaceCenteredCubic, 2) - s2).abs() < 1e-11);
        assert!((area(Preset::BodyCenteredCubic, 1) - (4.0 + 8.0 * 3f64.sqrt())).abs() < 1e-11);
        assert!((area(Preset::HexagonalClosePacked, 0) - s2).abs() < 1e-11);
        assert!((area(Preset::HexagonalClosePacked, 1) - s2).abs() < 1e-11);
    }

    #[test]
    fn small_cutoff_is_detected() {
        let fcc = PeriodicPacking::preset(Preset::FaceCenteredCubic);
        // only nearest neighbours (distance 2) but not the next shell at 2√2:
        // the rhombic dodecahedron is already exact, so this passes
        assert!(fcc.voronoi_cell(0, Some(2.1)).is_ok());
        // SC with cutoff below the nearest neighbour distance sees nothing
        let sc = PeriodicPacking::preset(Preset::SimpleCubic);
        assert!(matches!(sc.voronoi_cell(0, Some(1.5)), Err(GeometryError::CutoffTooSmall(_))));
        // BCC nearest neighbours alone give an octahedron; the second shell truncates it
        let bcc = PeriodicPacking::preset(Preset::BodyCenteredCubic);
        assert!(matches!(bcc.voronoi_cell(0, Some(2.1)), Err(GeometryError::CutoffTooSmall(_))));
        assert!(bcc.voronoi_cell(0, Some(2.4)).is_ok());
    }
}
