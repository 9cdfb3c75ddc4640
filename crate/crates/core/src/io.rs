//! Polyhedron files: JSON half-space or vertex lists, and ASCII OFF meshes.
//!
//! JSON input is an object with either `"halfspaces": [[nx, ny, nz, offset], ...]`
//! (plus an optional `"bound"`) or `"vertices": [[x, y, z], ...]`. Vertex input
//! is replaced by its convex hull. When both keys are present the half-spaces win.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};
use crate::polyhedron::{geom_eps, intersect_halfspaces, ConvexPolyhedron};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed OFF: {0}")]
    Off(String),
    #[error("polyhedron file has neither half-spaces nor vertices")]
    Empty,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PolyhedronJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<[f64; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 3]>>,
}

/// A parsed polyhedron plus any normalization warnings.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub polyhedron: ConvexPolyhedron,
    pub warnings: Vec<String>,
}

/// Default bounding half-width for JSON half-space input without `"bound"`.
pub const DEFAULT_BOUND: f64 = 1e3;

pub fn parse_polyhedron(path: &Path) -> Result<Parsed, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let is_off = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("off"))
        || text.trim_start().starts_with("OFF");
    if is_off {
        let pts = parse_off(&text)?;
        Ok(Parsed { polyhedron: hull(&pts)?, warnings: Vec::new() })
    } else {
        polyhedron_from_json(&text)
    }
}

pub fn polyhedron_from_json(text: &str) -> Result<Parsed, ParseError> {
    let doc: PolyhedronJson = serde_json::from_str(text)?;
    if let Some(raw) = &doc.halfspaces {
        let mut warnings = Vec::new();
        let mut hs = Vec::with_capacity(raw.len());
        for (i, h) in raw.iter().enumerate() {
            let (half, rescaled) = HalfSpace::normalized(Vec3::new(h[0], h[1], h[2]), h[3])?;
            if rescaled {
                let msg = format!(
                    "half-space {i}: normal ({}, {}, {}) normalized, offset {} rescaled to {}",
                    h[0], h[1], h[2], h[3], half.offset
                );
                log::warn!("{msg}");
                warnings.push(msg);
            }
            hs.push(half);
        }
        let p = intersect_halfspaces(&hs, doc.bound.unwrap_or(DEFAULT_BOUND))?;
        if !p.is_intrinsically_bounded() {
            return Err(GeometryError::Unbounded.into());
        }
        return Ok(Parsed { polyhedron: p, warnings });
    }
    if let Some(v) = &doc.vertices {
        let pts: Vec<Vec3> = v.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect();
        return Ok(Parsed { polyhedron: hull(&pts)?, warnings: Vec::new() });
    }
    Err(ParseError::Empty)
}

/// JSON with the face half-spaces and the vertices of `p`.
pub fn polyhedron_to_json(p: &ConvexPolyhedron) -> PolyhedronJson {
    PolyhedronJson {
        halfspaces: Some(
            p.face_halfspaces()
                .iter()
                .map(|h| [h.normal.x, h.normal.y, h.normal.z, h.offset])
                .collect(),
        ),
        bound: None,
        vertices: Some(p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect()),
    }
}

/// Convex hull of a point set, as a polyhedron.
///
/// Candidate facet planes come from every non-degenerate triple; a plane is
/// kept when all points lie on one side. Cubic in the number of points,
/// which is fine for cell-sized inputs.
pub fn hull(points: &[Vec3]) -> Result<ConvexPolyhedron, GeometryError> {
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(GeometryError::DegenerateInput);
    }
    let scale = points.iter().map(|p| p.amax()).fold(0.0, f64::max);
    let eps = geom_eps(scale);
    let mut pts: Vec<Vec3> = Vec::new();
    for p in points {
        if !pts.iter().any(|q| (p - q).norm() <= eps) {
            pts.push(*p);
        }
    }
    if pts.len() < 4 {
        return Err(GeometryError::DegenerateInput);
    }
    let mut planes: Vec<HalfSpace> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                let len = normal.norm();
                if len <= eps * scale.max(1.0) {
                    continue;
                }
                let normal = normal / len;
                let offset = normal.dot(&pts[i]);
                let d: Vec<f64> = pts.iter().map(|p| normal.dot(p) - offset).collect();
                let h = if d.iter().all(|&x| x <= eps) {
                    HalfSpace { normal, offset }
                } else if d.iter().all(|&x| x >= -eps) {
                    HalfSpace { normal: -normal, offset: -offset }
                } else {
                    continue;
                };
                if d.iter().all(|x| x.abs() <= eps) {
                    return Err(GeometryError::DegenerateInput);
                }
                if !planes.iter().any(|q| q.same_plane(&h, 10.0 * eps)) {
                    planes.push(h);
                }
            }
        }
    }
    if planes.len() < 4 {
        return Err(GeometryError::DegenerateInput);
    }
    let p = intersect_halfspaces(&planes, 2.0 * scale + 1.0)?;
    if !p.is_intrinsically_bounded() {
        return Err(GeometryError::DegenerateInput);
    }
    Ok(p)
}

/// Vertex coordinates of an OFF file. Face records are checked for shape and
/// index range but otherwise ignored.
pub fn parse_off(text: &str) -> Result<Vec<Vec3>, ParseError> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    match tokens.next() {
        Some("OFF") => {}
        other => return Err(ParseError::Off(format!("expected OFF header, found {other:?}"))),
    }
    let mut next_num = |what: &str| -> Result<f64, ParseError> {
        let t = tokens.next().ok_or_else(|| ParseError::Off(format!("missing {what}")))?;
        t.parse::<f64>().map_err(|_| ParseError::Off(format!("bad {what}: {t:?}")))
    };
    let count = |x: f64, what: &str| -> Result<usize, ParseError> {
        if x >= 0.0 && x.fract() == 0.0 {
            Ok(x as usize)
        } else {
            Err(ParseError::Off(format!("bad {what} {x}")))
        }
    };
    let nv = count(next_num("vertex count")?, "vertex count")?;
    let nf = count(next_num("face count")?, "face count")?;
    let _ne = next_num("edge count")?;
    let mut verts = Vec::with_capacity(nv);
    for _ in 0..nv {
        verts.push(Vec3::new(next_num("x")?, next_num("y")?, next_num("z")?));
    }
    for _ in 0..nf {
        let k = count(next_num("face size")?, "face size")?;
        for _ in 0..k {
            let i = count(next_num("face index")?, "face index")?;
            if i >= nv {
                return Err(ParseError::Off(format!("face index {i} out of range")));
            }
        }
    }
    Ok(verts)
}

/// Triangulated OFF of one or more polyhedra, counterclockwise outward.
pub fn to_off<'a>(cells: impl IntoIterator<Item = &'a ConvexPolyhedron>) -> String {
    let mut verts: Vec<Vec3> = Vec::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for p in cells {
        let base = verts.len();
        verts.extend_from_slice(p.vertices());
        for f in p.faces() {
            for i in 1..f.cycle.len() - 1 {
                tris.push([base + f.cycle[0], base + f.cycle[i], base + f.cycle[i + 1]]);
            }
        }
    }
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(out, "{} {} 0", verts.len(), tris.len());
    for v in &verts {
        let _ = writeln!(out, "{:?} {:?} {:?}", v.x, v.y, v.z);
    }
    for t in &tris {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::metrics;

    #[test]
    fn cube_from_json_halfspaces() {
        let text = r#"{"halfspaces": [[1,0,0,1],[-1,0,0,1],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#;
        let p = polyhedron_from_json(text).unwrap();
        assert!(p.warnings.is_empty());
        assert_eq!(p.polyhedron.vertices().len(), 8);
    }

    #[test]
    fn non_unit_normal_is_normalized_with_warning() {
        let text = r#"{"halfspaces": [[2,0,0,2],[-1,0,0,1],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#;
        let p = polyhedron_from_json(text).unwrap();
        assert_eq!(p.warnings.len(), 1);
        let h = p.polyhedron.halfspaces()[0];
        assert_eq!((h.normal, h.offset), (Vec3::x(), 1.0));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(polyhedron_from_json("{"), Err(ParseError::Json(_))));
        assert!(matches!(polyhedron_from_json("{}"), Err(ParseError::Empty)));
        let open = r#"{"halfspaces": [[1,0,0,1]]}"#;
        assert!(matches!(polyhedron_from_json(open), Err(ParseError::Geometry(GeometryError::Unbounded))));
    }

    #[test]
    fn cube_from_vertices() {
        let mut pts = Vec::new();
        for i in 0..8 {
            let s = |b: usize| if i & b != 0 { 1.0 } else { -1.0 };
            pts.push(Vec3::new(s(1), s(2), s(4)));
        }
        // interior and duplicate points do not matter
        pts.push(Vec3::zeros());
        pts.push(pts[3]);
        let p = hull(&pts).unwrap();
        assert_eq!((p.vertices().len(), p.edges().len(), p.faces().len()), (8, 12, 6));
        assert!((metrics(&p).unwrap().vol - 8.0).abs() < 1e-12);
    }

    #[test]
    fn coplanar_points_are_rejected() {
        let pts = vec![Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::new(1.0, 1.0, 0.0)];
        assert_eq!(hull(&pts).unwrap_err(), GeometryError::DegenerateInput);
        assert_eq!(hull(&pts[..3]).unwrap_err(), GeometryError::DegenerateInput);
    }

    #[test]
    fn off_round_trip_through_hull() {
        let cube = intersect_halfspaces(&HalfSpace::cube(1.0), 10.0).unwrap();
        let off = to_off([&cube]);
        assert!(off.starts_with("OFF\n8 12 0\n"));
        let pts = parse_off(&off).unwrap();
        let back = hull(&pts).unwrap();
        let (a, b) = (metrics(&cube).unwrap(), metrics(&back).unwrap());
        assert!((a.sarea - b.sarea).abs() < 1e-12 && (a.vol - b.vol).abs() < 1e-12);
    }

    #[test]
    fn off_errors() {
        assert!(parse_off("PLY\n").is_err());
        assert!(parse_off("OFF\n3 0 0\n0 0 0\n1 1 1\n").is_err());
        assert!(parse_off("OFF\n1 1 0\n0 0 0\n3 0 0 5\n").is_err());
        let with_comments = "OFF # header\n# comment\n1 0 0\n0.5 0 0\n";
        assert_eq!(parse_off(with_comments).unwrap(), vec![Vec3::new(0.5, 0.0, 0.0)]);
    }
}
