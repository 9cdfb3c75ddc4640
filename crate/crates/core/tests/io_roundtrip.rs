mod common;

use common::*;
use tilecert::io::{hull, parse_off, polyhedron_from_json, polyhedron_to_json, to_off};
use tilecert::{metrics, CellMetrics, PeriodicPacking, Preset};

fn assert_same(a: &CellMetrics, b: &CellMetrics) {
    for (x, y) in [
        (a.sarea, b.sarea),
        (a.vol, b.vol),
        (a.ecurv, b.ecurv),
        (a.inradius, b.inradius),
        (a.total_edge_length, b.total_edge_length),
        (a.diameter, b.diameter),
    ] {
        assert!(rel(x, y) < 1e-12, "{x} vs {y}");
    }
    assert_eq!(a.n_edges(), b.n_edges());
}

#[test]
fn json_round_trip_preserves_metrics() {
    let mut cells: Vec<_> = (0..20).map(|i| random_tangent(i, 4 + i as usize)).collect();
    for p in [Preset::FaceCenteredCubic, Preset::BodyCenteredCubic, Preset::HexagonalClosePacked] {
        cells.push(PeriodicPacking::preset(p).voronoi_cell(0, None).unwrap());
    }
    for p in &cells {
        let text = serde_json::to_string(&polyhedron_to_json(p)).unwrap();
        let q = polyhedron_from_json(&text).unwrap();
        assert!(q.warnings.is_empty());
        assert_same(&metrics(p).unwrap(), &metrics(&q.polyhedron).unwrap());
    }
}

#[test]
fn off_round_trip_through_hull() {
    for i in 0..10 {
        let p = random_tangent(100 + i, 6 + i as usize);
        let q = hull(&parse_off(&to_off([&p])).unwrap()).unwrap();
        let (a, b) = (metrics(&p).unwrap(), metrics(&q).unwrap());
        assert!(rel(a.vol, b.vol) < 1e-9 && rel(a.sarea, b.sarea) < 1e-9);
        assert_eq!(p.faces().len(), q.faces().len());
    }
}

#[test]
fn vertex_json_gives_hull() {
    let text = r#"{"vertices": [[1,1,1],[1,1,-1],[1,-1,1],[1,-1,-1],[-1,1,1],[-1,1,-1],[-1,-1,1],[-1,-1,-1],[0,0,0]]}"#;
    let p = polyhedron_from_json(text).unwrap().polyhedron;
    let m = metrics(&p).unwrap();
    assert_eq!(p.vertices().len(), 8);
    assert!(rel(m.sarea, 24.0) < 1e-12);
}
