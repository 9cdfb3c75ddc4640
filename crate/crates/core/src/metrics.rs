use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::halfspace::Vec3;
use crate::lp::chebyshev_center;
use crate::polyhedron::ConvexPolyhedron;

/// The per-cell functionals: surface area, volume, edge curvature
/// `Σ L(e)·cot(β_e/2)`, total edge length, inradius and diameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellMetrics {
    pub sarea: f64,
    pub vol: f64,
    pub ecurv: f64,
    pub total_edge_length: f64,
    pub inradius: f64,
    pub inball_center: [f64; 3],
    pub diameter: f64,
    /// Inner dihedral angle per edge, in edge order.
    pub dihedral_angles: Vec<f64>,
    pub edge_lengths: Vec<f64>,
}

impl CellMetrics {
    pub fn n_edges(&self) -> usize {
        self.dihedral_angles.len()
    }
}

/// Computes every metric of a bounded polyhedron. Reductions run in index
/// order so results are bit-reproducible.
pub fn metrics(p: &ConvexPolyhedron) -> Result<CellMetrics, GeometryError> {
    if !p.is_intrinsically_bounded() {
        return Err(GeometryError::Unbounded);
    }
    let mut sarea = 0.0;
    for f in 0..p.faces().len() {
        let a = p.face_area(f);
        let perimeter: f64 = {
            let cyc = &p.faces()[f].cycle;
            (0..cyc.len())
                .map(|i| (p.vertices()[cyc[i]] - p.vertices()[cyc[(i + 1) % cyc.len()]]).norm())
                .sum()
        };
        if a <= p.eps() * perimeter {
            return Err(GeometryError::DegenerateFace(f));
        }
        sarea += a;
    }
    let vol = volume(p);

    let n_edges = p.edges().len();
    let mut dihedral_angles = Vec::with_capacity(n_edges);
    let mut edge_lengths = Vec::with_capacity(n_edges);
    let mut ecurv = 0.0;
    let mut total_edge_length = 0.0;
    for e in 0..n_edges {
        let beta = p.dihedral_angle(e);
        let len = p.edge_length(e);
        if !(beta > 0.0 && beta < std::f64::consts::PI) || len <= p.eps() {
            return Err(GeometryError::Topology(format!("degenerate edge {e}: length {len}, angle {beta}")));
        }
        ecurv += len / (beta / 2.0).tan();
        total_edge_length += len;
        dihedral_angles.push(beta);
        edge_lengths.push(len);
    }
    let ball = chebyshev_center(&p.face_halfspaces(), &p.vertex_centroid())?;

    Ok(CellMetrics {
        sarea,
        vol,
        ecurv,
        total_edge_length,
        inradius: ball.radius,
        inball_center: [ball.center.x, ball.center.y, ball.center.z],
        diameter: p.diameter(),
        dihedral_angles,
        edge_lengths,
    })
}

/// Volume by signed tetrahedra from the vertex centroid, faces fanned about
/// their own centroids.
pub fn volume(p: &ConvexPolyhedron) -> f64 {
    let g = p.vertex_centroid();
    let mut vol = 0.0;
    for (fi, face) in p.faces().iter().enumerate() {
        let c = p.face_centroid(fi);
        let cyc = &face.cycle;
        for i in 0..cyc.len() {
            let a = p.vertices()[cyc[i]] - c;
            let b = p.vertices()[cyc[(i + 1) % cyc.len()]] - c;
            vol += (c - g).dot(&a.cross(&b)) / 6.0;
        }
    }
    vol
}

pub fn surface_area(p: &ConvexPolyhedron) -> f64 {
    (0..p.faces().len()).map(|f| p.face_area(f)).sum()
}

/// `Σ_faces (point on face · outward normal) · area`, which equals `3·vol`.
pub fn divergence_volume_term(p: &ConvexPolyhedron) -> f64 {
    (0..p.faces().len())
        .map(|f| p.face_centroid(f).dot(&p.face_plane(f).normal) * p.face_area(f))
        .sum()
}

pub fn inball_center(m: &CellMetrics) -> Vec3 {
    Vec3::new(m.inball_center[0], m.inball_center[1], m.inball_center[2])
}
