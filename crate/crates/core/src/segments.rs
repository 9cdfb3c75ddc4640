//! Groups coincident edges of a cell complex into meeting segments.

use std::collections::BTreeMap;

use crate::certificates::{MeetingSegment, SegmentCase};
use crate::error::CertificateError;
use crate::halfspace::Vec3;
use crate::polyhedron::ConvexPolyhedron;

type Key = [i64; 3];

fn quantize(p: &Vec3, quantum: f64) -> Key {
    [
        (p.x / quantum).round() as i64,
        (p.y / quantum).round() as i64,
        (p.z / quantum).round() as i64,
    ]
}

/// A group of coincident edges before case classification.
#[derive(Debug, Clone)]
pub struct EdgeGroup {
    pub a: Vec3,
    pub b: Vec3,
    pub betas: Vec<f64>,
}

impl EdgeGroup {
    pub fn midpoint(&self) -> Vec3 {
        (self.a + self.b) / 2.0
    }
}

/// Collects edges of all cells whose endpoints coincide after quantizing to
/// `quantum`. Groups are returned in key order.
pub fn group_edges(cells: &[ConvexPolyhedron], quantum: f64) -> Vec<EdgeGroup> {
    let mut groups: BTreeMap<(Key, Key), EdgeGroup> = BTreeMap::new();
    for c in cells {
        for (e, edge) in c.edges().iter().enumerate() {
            let [i, j] = edge.vertices;
            let (pa, pb) = (c.vertices()[i], c.vertices()[j]);
            let (ka, kb) = (quantize(&pa, quantum), quantize(&pb, quantum));
            let (key, a, b) = if ka <= kb { ((ka, kb), pa, pb) } else { ((kb, ka), pb, pa) };
            groups
                .entry(key)
                .or_insert_with(|| EdgeGroup { a, b, betas: Vec::new() })
                .betas
                .push(c.dihedral_angle(e));
        }
    }
    groups.into_values().collect()
}

/// Classifies edge groups of a partition of the cube `[-h, h]³`.
pub fn classify_in_cube(groups: &[EdgeGroup], h: f64, tol: f64) -> Result<Vec<MeetingSegment>, CertificateError> {
    let on = |x: f64| (x.abs() - h).abs() <= tol;
    groups
        .iter()
        .map(|g| {
            let shared_face = (0..3).filter(|&k| on(g.a[k]) && on(g.b[k]) && g.a[k].signum() == g.b[k].signum()).count();
            let case = match shared_face {
                0 => {
                    let sum: f64 = g.betas.iter().sum();
                    if (sum - std::f64::consts::PI).abs() <= crate::constants::EPS_ANGLE {
                        SegmentCase::FaceInterior
                    } else {
                        SegmentCase::Interior
                    }
                }
                1 => SegmentCase::FaceInterior,
                _ => SegmentCase::CubeEdge,
            };
            MeetingSegment::new(case, g.betas.clone())
        })
        .collect()
}

/// Segments of a space-filling complex whose midpoint passes `keep`; all of
/// them must be interior (case C) or face-interior (case B) segments.
pub fn classify_in_space(groups: &[EdgeGroup], keep: impl Fn(&Vec3) -> bool) -> Result<Vec<MeetingSegment>, CertificateError> {
    groups
        .iter()
        .filter(|g| keep(&g.midpoint()))
        .map(|g| {
            let sum: f64 = g.betas.iter().sum();
            let case = if (sum - std::f64::consts::PI).abs() <= crate::constants::EPS_ANGLE {
                SegmentCase::FaceInterior
            } else {
                SegmentCase::Interior
            };
            MeetingSegment::new(case, g.betas.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::cot_sum_bound;
    use crate::halfspace::HalfSpace;
    use crate::polyhedron::intersect_halfspaces;

    #[test]
    fn grid_of_cubes_has_all_three_cases() {
        // 2 x 2 x 2 cubes of side 2 in [-2, 2]^3
        let base = intersect_halfspaces(&HalfSpace::cube(1.0), 10.0).unwrap();
        let mut cells = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    cells.push(base.translated(&Vec3::new(x, y, z)));
                }
            }
        }
        let groups = group_edges(&cells, 1e-7);
        let segs = classify_in_cube(&groups, 2.0, 1e-9).unwrap();
        // 96 cell edges: 24 cube-edge halves (k=1), 24 face segments (k=2), 6 interior (k=4)
        let count = |c: SegmentCase| segs.iter().filter(|s| s.case_tag == c).count();
        assert_eq!(count(SegmentCase::CubeEdge), 24);
        assert_eq!(count(SegmentCase::FaceInterior), 24);
        assert_eq!(count(SegmentCase::Interior), 6);
        for s in &segs {
            let c = cot_sum_bound(s, 1e-7).unwrap();
            assert!(c.general.pass && c.case_specific.pass);
        }
        assert!(segs.iter().filter(|s| s.case_tag == SegmentCase::Interior).all(|s| s.k() == 4));
    }
}
