mod common;

use common::*;
use rand::Rng;
use rayon::prelude::*;
use tilecert::{metrics, ConvexPolyhedron, Vec3};

fn rejection_volume(p: &ConvexPolyhedron, samples: usize, seed: u64) -> f64 {
    let (lo, hi) = p.bounding_box();
    let hs = p.face_halfspaces();
    let mut r = rng(seed);
    let hits = (0..samples)
        .filter(|_| {
            let x = Vec3::new(r.gen_range(lo.x..hi.x), r.gen_range(lo.y..hi.y), r.gen_range(lo.z..hi.z));
            hs.iter().all(|h| h.signed_distance(&x) <= 0.0)
        })
        .count();
    (hi - lo).product() * hits as f64 / samples as f64
}

#[test]
fn kernel_volume_matches_rejection_sampling() {
    // 12+ faces keeps the cells compact enough for 1e6 samples to resolve 1%
    let worst = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let n = 12 + (i as usize % 13);
            let p = random_tangent(500 + i, n);
            rel(rejection_volume(&p, 1_000_000, i), metrics(&p).unwrap().vol)
        })
        .reduce(|| 0.0, f64::max);
    assert!(worst < 0.01, "worst relative error {worst}");
}
