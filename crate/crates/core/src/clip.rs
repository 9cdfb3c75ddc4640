use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};
use crate::metrics::surface_area;
use crate::polyhedron::{geom_eps, ConvexPolyhedron};

/// An edge of `bd(P ∩ C) \ bd C` with its length and inner dihedral angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorEdge {
    pub length: f64,
    pub beta: f64,
}

/// `P ∩ C_L` and the parts of its boundary off the cube surface.
#[derive(Debug, Clone)]
pub struct ClippedCell {
    pub cell: ConvexPolyhedron,
    /// Area of the faces lying on `bd C_L`.
    pub clipped_face_area: f64,
    /// Area of `bd(P ∩ C_L)` not on `bd C_L`.
    pub interior_boundary_area: f64,
    pub interior_edges: Vec<InteriorEdge>,
}

impl ClippedCell {
    pub fn interior_edge_length(&self) -> f64 {
        self.interior_edges.iter().map(|e| e.length).sum()
    }

    pub fn sarea(&self) -> f64 {
        self.clipped_face_area + self.interior_boundary_area
    }
}

/// Tolerance for window computations at edge length `l`.
pub fn window_eps(p: &ConvexPolyhedron, l: f64) -> f64 {
    geom_eps(l / 2.0).max(p.eps())
}

/// Intersects `p` with the origin-centered axis-aligned cube of edge length `l`.
pub fn clip_to_cube(p: &ConvexPolyhedron, l: f64) -> Result<ClippedCell, GeometryError> {
    if !l.is_finite() || l <= 0.0 {
        return Err(GeometryError::InvalidBound(l));
    }
    let h = l / 2.0;
    let eps = window_eps(p, l);
    let window = HalfSpace::cube(h);
    let (cell, _) = p.clip_by(&window, eps)?.ok_or(GeometryError::EmptyIntersection)?;

    // A face is on the cube surface when its plane is one of the window planes,
    // whether it came from the window clip or was already there.
    let on_window: Vec<bool> = (0..cell.faces().len())
        .map(|f| window.iter().any(|w| cell.face_plane(f).same_plane(w, 10.0 * eps)))
        .collect();

    let mut clipped_face_area = 0.0;
    let mut interior_boundary_area = 0.0;
    for (f, &on) in on_window.iter().enumerate() {
        let a = cell.face_area(f);
        if on {
            clipped_face_area += a;
        } else {
            interior_boundary_area += a;
        }
    }
    let interior_edges = (0..cell.edges().len())
        .filter(|&e| {
            let [f, g] = cell.edges()[e].faces;
            !on_window[f] && !on_window[g]
        })
        .map(|e| InteriorEdge {
            length: cell.edge_length(e),
            beta: cell.dihedral_angle(e),
        })
        .collect();
    debug_assert!((surface_area(&cell) - clipped_face_area - interior_boundary_area).abs() < 1e-9 * l * l);
    Ok(ClippedCell {
        cell,
        clipped_face_area,
        interior_boundary_area,
        interior_edges,
    })
}

/// True when `p` meets the closed cube `C_L` (possibly only on its surface).
pub fn touches_cube(p: &ConvexPolyhedron, l: f64) -> Result<bool, GeometryError> {
    if !l.is_finite() || l <= 0.0 {
        return Err(GeometryError::InvalidBound(l));
    }
    let h = l / 2.0;
    let eps = 4.0 * window_eps(p, l);
    let verts = p.vertices();
    // separating-axis test: cube normals, cell face normals, edge × axis
    let mut axes: Vec<Vec3> = vec![Vec3::x(), Vec3::y(), Vec3::z()];
    axes.extend((0..p.faces().len()).map(|f| p.face_plane(f).normal));
    for e in p.edges() {
        let d = verts[e.vertices[1]] - verts[e.vertices[0]];
        for a in [Vec3::x(), Vec3::y(), Vec3::z()] {
            let c = d.cross(&a);
            let n = c.norm();
            if n > 1e-12 * d.norm() {
                axes.push(c / n);
            }
        }
    }
    let separated = axes.iter().any(|u| {
        let (lo, hi) = verts
            .iter()
            .map(|v| u.dot(v))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let r = h * u.abs().sum();
        lo > r + eps || hi < -r - eps
    });
    Ok(!separated)
}
