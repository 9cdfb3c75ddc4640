//! Face-normal sets of the symmetric polytopes circumscribed about the unit ball.

use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};
use crate::polyhedron::{intersect_halfspaces, ConvexPolyhedron};

/// Bounding half-width used when building tangent polytopes. Large enough
/// that any cell with a sensible aspect ratio never touches it.
pub const TANGENT_BOUND: f64 = 1e3;

fn unit(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3::new(x, y, z).normalize()
}

/// Regular tetrahedron.
pub fn tetrahedron_normals() -> Vec<Vec3> {
    vec![
        unit(1.0, 1.0, 1.0),
        unit(1.0, -1.0, -1.0),
        unit(-1.0, 1.0, -1.0),
        unit(-1.0, -1.0, 1.0),
    ]
}

/// Cube: the six coordinate directions.
pub fn cube_normals() -> Vec<Vec3> {
    vec![Vec3::x(), -Vec3::x(), Vec3::y(), -Vec3::y(), Vec3::z(), -Vec3::z()]
}

/// Regular octahedron.
pub fn octahedron_normals() -> Vec<Vec3> {
    let mut out = Vec::with_capacity(8);
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                out.push(unit(sx, sy, sz));
            }
        }
    }
    out
}

/// The twelve nearest-neighbour directions of the FCC lattice; the tangent
/// polytope is the rhombic dodecahedron.
pub fn fcc_normals() -> Vec<Vec3> {
    let mut out = Vec::with_capacity(12);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for si in [1.0, -1.0] {
            for sj in [1.0, -1.0] {
                let mut n = Vec3::zeros();
                n[i] = si;
                n[j] = sj;
                out.push(n.normalize());
            }
        }
    }
    out
}

/// Regular dodecahedron (normals point at the vertices of an icosahedron).
pub fn dodecahedron_normals() -> Vec<Vec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(12);
    for a in [1.0, -1.0] {
        for b in [phi, -phi] {
            out.push(unit(0.0, a, b));
            out.push(unit(a, b, 0.0));
            out.push(unit(b, 0.0, a));
        }
    }
    out
}

/// Regular icosahedron (normals point at the vertices of a dodecahedron).
pub fn icosahedron_normals() -> Vec<Vec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = octahedron_normals();
    for a in [1.0 / phi, -1.0 / phi] {
        for b in [phi, -phi] {
            out.push(unit(0.0, a, b));
            out.push(unit(a, b, 0.0));
            out.push(unit(b, 0.0, a));
        }
    }
    out
}

/// Symmetric normal sets with exactly `n` members.
pub fn symmetric_normal_sets(n: usize) -> Vec<Vec<Vec3>> {
    match n {
        4 => vec![tetrahedron_normals()],
        6 => vec![cube_normals()],
        8 => vec![octahedron_normals()],
        12 => vec![dodecahedron_normals(), fcc_normals()],
        20 => vec![icosahedron_normals()],
        _ => Vec::new(),
    }
}

/// `∩ {x : n·x ≤ 1}` for the given normals (normalized here).
pub fn tangent_polytope(normals: &[Vec3]) -> Result<ConvexPolyhedron, GeometryError> {
    let hs: Vec<HalfSpace> = normals
        .iter()
        .map(|n| HalfSpace::normalized(*n, 1.0).map(|(h, _)| h))
        .collect::<Result<_, _>>()?;
    let p = intersect_halfspaces(&hs, TANGENT_BOUND)?;
    if !p.is_intrinsically_bounded() {
        return Err(GeometryError::Unbounded);
    }
    Ok(p)
}
