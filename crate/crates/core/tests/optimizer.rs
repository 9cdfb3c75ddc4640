use tilecert::certificates::certify_cell;
use tilecert::constants::AVERAGE_AREA_LOWER_BOUND;
use tilecert::{metrics, minimize_area};

#[test]
fn best_area_decreases_with_face_count() {
    let mut last = f64::INFINITY;
    for n in [4, 6, 8, 12, 20] {
        let r = minimize_area(n, 4, 99).unwrap();
        assert!(r.best_area <= last + 1e-9, "N={n}: {} after {last}", r.best_area);
        assert!(r.best_area > 4.0 * std::f64::consts::PI);
        assert!(r.best_area >= AVERAGE_AREA_LOWER_BOUND);
        let m = metrics(&r.best_params.polytope().unwrap()).unwrap();
        assert!((m.inradius - 1.0).abs() < 1e-9);
        assert!(certify_cell(&m, 1e-7).all_pass(), "N={n}");
        last = r.best_area;
    }
}

#[test]
fn same_seed_same_result() {
    let a = minimize_area(9, 3, 5).unwrap();
    let b = minimize_area(9, 3, 5).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
