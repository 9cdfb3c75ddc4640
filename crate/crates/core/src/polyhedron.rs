//! Bounded convex polyhedra built by clipping a box with half-spaces.
//!
//! Construction starts from the cube `[-bound, bound]³` and clips it by each
//! half-space in turn. Vertices are shared by index, and an edge cut by a
//! plane yields the same new vertex for both incident faces, so the face
//! lattice stays consistent without tolerance-based stitching. A final pass
//! merges vertices closer than `eps`, folds near-coplanar neighbouring faces
//! together, and drops vertices that ended up on fewer than three faces.

use std::collections::HashMap;

use crate::constants::{EPS_ANGLE, EPS_GEOM_REL};
use crate::error::GeometryError;
use crate::halfspace::{HalfSpace, Vec3};

/// A face: the supporting half-space and its vertex cycle, counterclockwise
/// when seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub halfspace: usize,
    pub cycle: Vec<usize>,
}

/// An edge with its two endpoints and the two faces meeting along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub faces: [usize; 2],
}

/// A bounded convex polyhedron with full combinatorics.
#[derive(Debug, Clone)]
pub struct ConvexPolyhedron {
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<Vec3>,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    first_bounding_plane: usize,
    intrinsically_bounded: bool,
    eps: f64,
}

/// Characteristic-length based point-on-plane tolerance.
pub fn geom_eps(characteristic_length: f64) -> f64 {
    EPS_GEOM_REL * characteristic_length.abs().max(1.0)
}

/// Intersects `hs` with the cube `[-bound, bound]³`.
///
/// The result is flagged as intrinsically bounded when none of the cube's
/// planes supports a face; callers that need a genuinely bounded cell should
/// check [`ConvexPolyhedron::is_intrinsically_bounded`].
pub fn intersect_halfspaces(hs: &[HalfSpace], bound: f64) -> Result<ConvexPolyhedron, GeometryError> {
    if !bound.is_finite() || bound <= 0.0 {
        return Err(GeometryError::InvalidBound(bound));
    }
    for h in hs {
        HalfSpace::new(h.normal, h.offset)?;
    }
    let max_offset = hs.iter().map(|h| h.offset.abs()).fold(0.0, f64::max);
    let eps = geom_eps(max_offset.min(bound));

    let mut planes = hs.to_vec();
    let first_bounding_plane = planes.len();
    planes.extend_from_slice(&HalfSpace::cube(bound));
    let mut b = Builder::unit_box(planes, first_bounding_plane, bound, eps);
    for i in 0..first_bounding_plane {
        if let ClipOutcome::Empty = b.clip(i) {
            return Err(GeometryError::EmptyInterior);
        }
    }
    b.finish(first_bounding_plane)
}

impl ConvexPolyhedron {
    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Point-on-plane tolerance used when this polyhedron was built.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// True when no face lies on a plane of the construction box.
    pub fn is_intrinsically_bounded(&self) -> bool {
        self.intrinsically_bounded
    }

    /// True when face `f` is supported by one of the construction-box planes.
    pub fn is_bounding_face(&self, f: usize) -> bool {
        self.faces[f].halfspace >= self.first_bounding_plane
    }

    pub fn face_plane(&self, f: usize) -> &HalfSpace {
        &self.halfspaces[self.faces[f].halfspace]
    }

    /// Half-spaces that actually support a face, in face order.
    pub fn face_halfspaces(&self) -> Vec<HalfSpace> {
        self.faces.iter().map(|f| self.halfspaces[f.halfspace]).collect()
    }

    pub fn vertex_centroid(&self) -> Vec3 {
        let sum = self.vertices.iter().fold(Vec3::zeros(), |acc, v| acc + v);
        sum / self.vertices.len() as f64
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e].vertices;
        (self.vertices[a] - self.vertices[b]).norm()
    }

    /// Inner dihedral angle along edge `e`: π minus the angle between the
    /// outward normals of its two faces.
    pub fn dihedral_angle(&self, e: usize) -> f64 {
        let [f, g] = self.edges[e].faces;
        let c = self.face_plane(f).normal.dot(&self.face_plane(g).normal);
        std::f64::consts::PI - c.clamp(-1.0, 1.0).acos()
    }

    /// Area of face `f` by fan triangulation about its vertex centroid.
    pub fn face_area(&self, f: usize) -> f64 {
        let cyc = &self.faces[f].cycle;
        let c = self.face_centroid(f);
        let mut area = 0.0;
        for i in 0..cyc.len() {
            let a = self.vertices[cyc[i]] - c;
            let b = self.vertices[cyc[(i + 1) % cyc.len()]] - c;
            area += 0.5 * a.cross(&b).norm();
        }
        area
    }

    /// Vertex average of face `f`.
    pub fn face_centroid(&self, f: usize) -> Vec3 {
        let cyc = &self.faces[f].cycle;
        cyc.iter().fold(Vec3::zeros(), |acc, &i| acc + self.vertices[i]) / cyc.len() as f64
    }

    pub fn diameter(&self) -> f64 {
        let mut d2: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d2 = d2.max((a - b).norm_squared());
            }
        }
        d2.sqrt()
    }

    /// True when `p` satisfies every face inequality with slack `eps`.
    pub fn contains_point(&self, p: &Vec3, eps: f64) -> bool {
        self.faces
            .iter()
            .all(|f| self.halfspaces[f.halfspace].signed_distance(p) <= eps)
    }

    /// Axis-aligned bounding box of the vertices.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    /// Rigid translation; combinatorics and tolerances are unchanged.
    pub fn translated(&self, t: &Vec3) -> ConvexPolyhedron {
        ConvexPolyhedron {
            halfspaces: self.halfspaces.iter().map(|h| h.translated(t)).collect(),
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            faces: self.faces.clone(),
            edges: self.edges.clone(),
            first_bounding_plane: self.first_bounding_plane,
            intrinsically_bounded: self.intrinsically_bounded,
            eps: self.eps,
        }
    }

    /// Applies `x ↦ R x + t` for a rotation matrix `R`.
    pub fn transformed(&self, rotation: &nalgebra::Matrix3<f64>, t: &Vec3) -> ConvexPolyhedron {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let n = rotation * h.normal;
                let n = n / n.norm();
                HalfSpace { normal: n, offset: h.offset + n.dot(t) }
            })
            .collect();
        ConvexPolyhedron {
            halfspaces,
            vertices: self.vertices.iter().map(|v| rotation * v + t).collect(),
            faces: self.faces.clone(),
            edges: self.edges.clone(),
            first_bounding_plane: self.first_bounding_plane,
            intrinsically_bounded: self.intrinsically_bounded,
            eps: self.eps,
        }
    }

    /// Clips by extra half-spaces. Returns the clipped polyhedron together
    /// with the index at which `extra` starts in its half-space list, or
    /// `None` when the result has no interior.
    pub(crate) fn clip_by(
        &self,
        extra: &[HalfSpace],
        eps: f64,
    ) -> Result<Option<(ConvexPolyhedron, usize)>, GeometryError> {
        let start = self.halfspaces.len();
        let mut planes = self.halfspaces.clone();
        planes.extend_from_slice(extra);
        let mut b = Builder {
            planes,
            verts: self.vertices.clone(),
            faces: self.faces.clone(),
            eps: eps.max(self.eps),
        };
        for i in start..start + extra.len() {
            if let ClipOutcome::Empty = b.clip(i) {
                return Ok(None);
            }
        }
        let mut p = b.finish(self.first_bounding_plane)?;
        p.intrinsically_bounded = self.intrinsically_bounded;
        Ok(Some((p, start)))
    }

    /// Checks the structural invariants: Euler relation, two faces per edge,
    /// every vertex inside every half-space, planar faces, outward orientation.
    pub fn validate(&self) -> Result<(), GeometryError> {
        let (v, e, f) = (self.vertices.len() as i64, self.edges.len() as i64, self.faces.len() as i64);
        if v - e + f != 2 {
            return Err(GeometryError::Topology(format!("Euler: V={v} E={e} F={f}")));
        }
        let tol = 10.0 * self.eps;
        for (fi, face) in self.faces.iter().enumerate() {
            let h = &self.halfspaces[face.halfspace];
            for &vi in &face.cycle {
                if h.signed_distance(&self.vertices[vi]).abs() > tol {
                    return Err(GeometryError::Topology(format!("face {fi} is not planar")));
                }
            }
            let c = self.face_centroid(fi);
            let mut n = Vec3::zeros();
            for i in 0..face.cycle.len() {
                let a = self.vertices[face.cycle[i]] - c;
                let b = self.vertices[face.cycle[(i + 1) % face.cycle.len()]] - c;
                n += a.cross(&b);
            }
            if n.dot(&h.normal) <= 0.0 {
                return Err(GeometryError::Topology(format!("face {fi} is not outward oriented")));
            }
        }
        for p in &self.vertices {
            if !self.halfspaces.iter().all(|h| h.signed_distance(p) <= tol) {
                return Err(GeometryError::Topology("vertex violates a half-space".into()));
            }
        }
        Ok(())
    }
}

enum ClipOutcome {
    Redundant,
    Clipped,
    Empty,
}

struct Builder {
    planes: Vec<HalfSpace>,
    verts: Vec<Vec3>,
    faces: Vec<Face>,
    eps: f64,
}

impl Builder {
    fn unit_box(planes: Vec<HalfSpace>, first: usize, h: f64, eps: f64) -> Self {
        let verts: Vec<Vec3> = (0..8)
            .map(|i| {
                let s = |bit: usize| if i & bit != 0 { h } else { -h };
                Vec3::new(s(1), s(2), s(4))
            })
            .collect();
        // planes follow HalfSpace::cube order: +x, -x, +y, -y, +z, -z
        let members: [(usize, usize); 6] = [(1, 1), (1, 0), (2, 2), (2, 0), (4, 4), (4, 0)];
        let faces = members
            .iter()
            .enumerate()
            .map(|(k, &(bit, want))| {
                let idx: Vec<usize> = (0..8).filter(|i| i & bit == want).collect();
                let normal = planes[first + k].normal;
                Face {
                    halfspace: first + k,
                    cycle: sort_cycle(&verts, &idx, &normal),
                }
            })
            .collect();
        Builder { planes, verts, faces, eps }
    }

    fn clip(&mut self, plane: usize) -> ClipOutcome {
        let h = self.planes[plane];
        let eps = self.eps;
        let d: Vec<f64> = self.verts.iter().map(|v| h.signed_distance(v)).collect();
        if d.iter().all(|&x| x <= eps) {
            return ClipOutcome::Redundant;
        }
        if d.iter().all(|&x| x >= -eps) {
            return ClipOutcome::Empty;
        }

        let mut cut: HashMap<(usize, usize), usize> = HashMap::new();
        let mut new_faces = Vec::with_capacity(self.faces.len() + 1);
        let mut on_plane: Vec<usize> = Vec::new();
        for face in &self.faces {
            let cyc = &face.cycle;
            let mut out = Vec::with_capacity(cyc.len() + 1);
            let mut has_inside = false;
            for i in 0..cyc.len() {
                let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                let (da, db) = (d[a], d[b]);
                if da <= eps {
                    out.push(a);
                    if da < -eps {
                        has_inside = true;
                    } else {
                        on_plane.push(a);
                    }
                }
                if (da < -eps && db > eps) || (da > eps && db < -eps) {
                    let key = (a.min(b), a.max(b));
                    let idx = *cut.entry(key).or_insert_with(|| {
                        let (lo, hi) = key;
                        let t = d[lo] / (d[lo] - d[hi]);
                        let p = self.verts[lo] + (self.verts[hi] - self.verts[lo]) * t;
                        self.verts.push(p);
                        self.verts.len() - 1
                    });
                    out.push(idx);
                    on_plane.push(idx);
                }
            }
            if has_inside && out.len() >= 3 {
                new_faces.push(Face { halfspace: face.halfspace, cycle: out });
            }
        }
        on_plane.sort_unstable();
        on_plane.dedup();
        if on_plane.len() >= 3 {
            let cycle = sort_cycle(&self.verts, &on_plane, &h.normal);
            new_faces.push(Face { halfspace: plane, cycle });
        }
        self.faces = new_faces;
        self.compact();
        ClipOutcome::Clipped
    }

    /// Drops unreferenced vertices and merges vertices closer than `eps`.
    fn compact(&mut self) {
        let n = self.verts.len();
        let mut used = vec![false; n];
        for f in &self.faces {
            for &i in &f.cycle {
                used[i] = true;
            }
        }
        let live: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let mut rep: Vec<usize> = (0..n).collect();
        let eps2 = self.eps * self.eps;
        for (k, &i) in live.iter().enumerate() {
            if rep[i] != i {
                continue;
            }
            for &j in &live[k + 1..] {
                if rep[j] == j && (self.verts[i] - self.verts[j]).norm_squared() <= eps2 {
                    rep[j] = i;
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut verts = Vec::with_capacity(live.len());
        for &i in &live {
            if rep[i] == i {
                remap[i] = verts.len();
                verts.push(self.verts[i]);
            }
        }
        for &i in &live {
            remap[i] = remap[rep[i]];
        }
        for f in &mut self.faces {
            let mut cyc: Vec<usize> = f.cycle.iter().map(|&i| remap[i]).collect();
            cyc.dedup();
            while cyc.len() > 1 && cyc.first() == cyc.last() {
                cyc.pop();
            }
            f.cycle = cyc;
        }
        self.faces.retain(|f| f.cycle.len() >= 3);
        self.verts = verts;
    }

    fn finish(mut self, first_bounding_plane: usize) -> Result<ConvexPolyhedron, GeometryError> {
        self.compact();
        self.merge_coplanar_faces();
        self.drop_low_degree_vertices();
        if self.faces.len() < 4 {
            return Err(GeometryError::EmptyInterior);
        }

        // A bounding-box face that coincides with an input plane belongs to the input.
        for f in &mut self.faces {
            if f.halfspace >= first_bounding_plane {
                let hb = self.planes[f.halfspace];
                if let Some(k) = (0..first_bounding_plane).find(|&k| self.planes[k].same_plane(&hb, self.eps)) {
                    f.halfspace = k;
                }
            }
        }

        let edges = build_edges(&self.faces)?;
        let poly = ConvexPolyhedron {
            intrinsically_bounded: self.faces.iter().all(|f| f.halfspace < first_bounding_plane),
            halfspaces: self.planes,
            vertices: self.verts,
            faces: self.faces,
            edges,
            first_bounding_plane,
            eps: self.eps,
        };
        let (v, e, f) = (poly.vertices.len(), poly.edges.len(), poly.faces.len());
        if v + f != e + 2 {
            return Err(GeometryError::Topology(format!("Euler: V={v} E={e} F={f}")));
        }
        for fi in 0..poly.faces.len() {
            let cyc = &poly.faces[fi].cycle;
            let perimeter: f64 = (0..cyc.len())
                .map(|i| (poly.vertices[cyc[i]] - poly.vertices[cyc[(i + 1) % cyc.len()]]).norm())
                .sum();
            if poly.face_area(fi) <= poly.eps * perimeter {
                return Err(GeometryError::DegenerateFace(fi));
            }
        }
        Ok(poly)
    }

    fn merge_coplanar_faces(&mut self) {
        let cos_tol = EPS_ANGLE.cos();
        loop {
            let mut merged = false;
            'outer: for f in 0..self.faces.len() {
                let nf = self.planes[self.faces[f].halfspace].normal;
                for g in f + 1..self.faces.len() {
                    let ng = self.planes[self.faces[g].halfspace].normal;
                    if nf.dot(&ng) < cos_tol {
                        continue;
                    }
                    let shared = self.faces[f].cycle.iter().filter(|v| self.faces[g].cycle.contains(v)).count();
                    if shared < 2 {
                        continue;
                    }
                    let mut all = self.faces[f].cycle.clone();
                    all.extend(self.faces[g].cycle.iter().copied());
                    all.sort_unstable();
                    all.dedup();
                    self.faces[f].cycle = sort_cycle(&self.verts, &all, &nf);
                    self.faces.remove(g);
                    merged = true;
                    break 'outer;
                }
            }
            if !merged {
                break;
            }
        }
    }

    fn drop_low_degree_vertices(&mut self) {
        loop {
            let mut degree = vec![0usize; self.verts.len()];
            for f in &self.faces {
                for &i in &f.cycle {
                    degree[i] += 1;
                }
            }
            if degree.iter().all(|&d| d == 0 || d >= 3) {
                break;
            }
            for f in &mut self.faces {
                f.cycle.retain(|&i| degree[i] >= 3);
            }
            self.faces.retain(|f| f.cycle.len() >= 3);
            self.compact();
        }
    }
}

fn build_edges(faces: &[Face]) -> Result<Vec<Edge>, GeometryError> {
    // directed half-edge (a, b) -> face
    let mut half: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for i in 0..f.cycle.len() {
            let key = (f.cycle[i], f.cycle[(i + 1) % f.cycle.len()]);
            if half.insert(key, fi).is_some() {
                return Err(GeometryError::Topology(format!("half-edge {key:?} repeated")));
            }
        }
    }
    let mut edges = Vec::with_capacity(half.len() / 2);
    for (fi, f) in faces.iter().enumerate() {
        for i in 0..f.cycle.len() {
            let (a, b) = (f.cycle[i], f.cycle[(i + 1) % f.cycle.len()]);
            if a > b {
                continue;
            }
            let other = half
                .get(&(b, a))
                .ok_or_else(|| GeometryError::Topology(format!("edge ({a}, {b}) has one face")))?;
            edges.push(Edge { vertices: [a, b], faces: [fi, *other] });
        }
    }
    if edges.len() * 2 != half.len() {
        return Err(GeometryError::Topology("unpaired half-edges".into()));
    }
    Ok(edges)
}

/// Orders coplanar points counterclockwise as seen from the tip of `normal`.
fn sort_cycle(verts: &[Vec3], idx: &[usize], normal: &Vec3) -> Vec<usize> {
    let c = idx.iter().fold(Vec3::zeros(), |acc, &i| acc + verts[i]) / idx.len() as f64;
    let helper = if normal.x.abs() < 0.6 { Vec3::x() } else { Vec3::y() };
    let u = normal.cross(&helper).normalize();
    let w = normal.cross(&u);
    let mut keyed: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let r = verts[i] - c;
            (r.dot(&w).atan2(r.dot(&u)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, i)| i).collect()
}
