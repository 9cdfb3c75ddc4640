#![allow(dead_code)]

use nalgebra::{Rotation3, Unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilecert::optimizer::random_bounded_normals;
use tilecert::shapes::tangent_polytope;
use tilecert::{ConvexPolyhedron, Vec3};

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tangent polytope with `n` random unit normals (all offsets 1).
pub fn random_tangent(seed: u64, n: usize) -> ConvexPolyhedron {
    let mut r = rng(seed);
    let normals = random_bounded_normals(&mut r, n, 10_000).expect("bounded configuration");
    tangent_polytope(&normals).expect("tangent polytope")
}

pub fn random_rotation<R: Rng>(r: &mut R) -> Rotation3<f64> {
    let axis = tilecert::optimizer::random_unit(r);
    Rotation3::from_axis_angle(&Unit::new_normalize(axis), r.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_translation<R: Rng>(r: &mut R, scale: f64) -> Vec3 {
    Vec3::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale), r.gen_range(-scale..scale))
}
