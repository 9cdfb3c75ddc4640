mod common;

use common::*;
use proptest::prelude::*;
use tilecert::certificates::{certify_cell, check_fejes_toth, cot_sum_bound, MeetingSegment, SegmentCase};
use tilecert::metrics::{divergence_volume_term, volume};
use tilecert::{area_objective, metrics, HalfSpace, TangentPolytopeParams, Vec3};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_relation_holds(seed in any::<u64>(), n in 4usize..30) {
        let p = random_tangent(seed, n);
        let (v, e, f) = (p.vertices().len() as i64, p.edges().len() as i64, p.faces().len() as i64);
        prop_assert_eq!(v - e + f, 2);
        prop_assert!(p.validate().is_ok());
    }

    #[test]
    fn metrics_invariant_under_rigid_motion(seed in any::<u64>(), n in 4usize..24) {
        let p = random_tangent(seed, n);
        let mut r = rng(seed ^ 0xABCD);
        let rot = random_rotation(&mut r);
        let t = random_translation(&mut r, 10.0);
        let q = p.transformed(rot.matrix(), &t);
        let (a, b) = (metrics(&p).unwrap(), metrics(&q).unwrap());
        prop_assert!(rel(b.sarea, a.sarea) < 1e-9);
        prop_assert!(rel(b.vol, a.vol) < 1e-9);
        prop_assert!(rel(b.ecurv, a.ecurv) < 1e-9);
        prop_assert!(rel(b.inradius, a.inradius) < 1e-9);
        prop_assert!(rel(b.total_edge_length, a.total_edge_length) < 1e-9);
    }

    #[test]
    fn divergence_identity(seed in any::<u64>(), n in 4usize..24, shift in -5.0f64..5.0) {
        let p = random_tangent(seed, n).translated(&Vec3::new(shift, -shift, 0.5 * shift));
        prop_assert!(rel(divergence_volume_term(&p), 3.0 * volume(&p)) < 1e-9);
    }

    #[test]
    fn tangent_polytopes_have_unit_inradius_and_volume_identity(seed in any::<u64>(), n in 4usize..24) {
        let m = metrics(&random_tangent(seed, n)).unwrap();
        prop_assert!((m.inradius - 1.0).abs() < 1e-9);
        prop_assert!(rel(m.vol, m.sarea * m.inradius / 3.0) < 1e-9);
    }

    #[test]
    fn fejes_toth_ratio_is_scale_invariant(seed in any::<u64>(), n in 4usize..20, lambda in 0.1f64..10.0) {
        let p = random_tangent(seed, n);
        let scaled: Vec<HalfSpace> = p
            .face_halfspaces()
            .iter()
            .map(|h| HalfSpace::new(h.normal, h.offset * lambda).unwrap())
            .collect();
        let q = tilecert::intersect_halfspaces(&scaled, 1e3 * lambda.max(1.0)).unwrap();
        let (a, b) = (metrics(&p).unwrap(), metrics(&q).unwrap());
        let ratio = |m: &tilecert::CellMetrics| m.sarea * m.sarea / (3.0 * m.vol * m.ecurv);
        prop_assert!(rel(ratio(&b), ratio(&a)) < 1e-9);
        prop_assert!(check_fejes_toth(&b, 1e-7).pass);
    }

    #[test]
    fn random_tangent_polytopes_pass_cell_certificates(seed in any::<u64>(), n in 4usize..30) {
        let m = metrics(&random_tangent(seed, n)).unwrap();
        let c = certify_cell(&m, 1e-7);
        prop_assert!(c.all_pass(), "{:?}", c);
    }

    #[test]
    fn area_objective_rotation_invariant(seed in any::<u64>(), n in 4usize..16) {
        let p = random_tangent(seed, n);
        let normals: Vec<Vec3> = p.face_halfspaces().iter().map(|h| h.normal).collect();
        let mut r = rng(seed.rotate_left(7));
        let rot = random_rotation(&mut r);
        let rotated: Vec<Vec3> = normals.iter().map(|v| rot * v).collect();
        let a = area_objective(&TangentPolytopeParams::new(&normals).unwrap());
        let b = area_objective(&TangentPolytopeParams::new(&rotated).unwrap());
        prop_assert!(rel(b, a) < 1e-9);
    }

    #[test]
    fn cot_sum_bounds(weights in prop::collection::vec(1e-3f64..1.0, 1..8), case in 0usize..3) {
        let case = [SegmentCase::CubeEdge, SegmentCase::FaceInterior, SegmentCase::Interior][case];
        prop_assume!(weights.len() >= case.min_cells());
        let s: f64 = weights.iter().sum();
        let betas: Vec<f64> = weights.iter().map(|w| w / s * case.angle_total()).collect();
        prop_assume!(betas.iter().all(|b| *b < std::f64::consts::PI));
        let c = cot_sum_bound(&MeetingSegment::new(case, betas).unwrap(), 1e-7).unwrap();
        prop_assert!(c.general.pass && c.case_specific.pass);
    }
}

#[test]
fn equal_angles_attain_case_bound() {
    for case in [SegmentCase::CubeEdge, SegmentCase::FaceInterior, SegmentCase::Interior] {
        for k in case.min_cells().max(2)..9 {
            let seg = MeetingSegment::new(case, vec![case.angle_total() / k as f64; k]).unwrap();
            let c = cot_sum_bound(&seg, 1e-7).unwrap();
            assert!(c.case_specific.relative_slack().abs() < 1e-9, "{case:?} k={k}");
        }
    }
}
