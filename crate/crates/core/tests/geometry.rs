use mmsem::geometry::{sine_jacobian, sine_map, Grading, MapKind, MappedMesh, QuadRule, SINE_AMPLITUDE};
use proptest::prelude::*;

#[test]
fn sine_map_center_and_jacobian() {
    assert_eq!(sine_map(0.0, 0.0), (0.5, 0.5));
    let j = sine_jacobian(0.0, 0.0);
    assert!((j.m[0][0] - 0.5).abs() < 1e-15);
    assert!((j.m[1][1] - 0.5).abs() < 1e-15);
    assert!(j.m[0][1].abs() < 1e-15 && j.m[1][0].abs() < 1e-15);
    assert!((j.det - 0.25).abs() < 1e-15);
}

#[test]
fn sine_mesh_center_weights() {
    // 2×2 mesh: the corner (1, 1) of element 0 is the domain center
    let mesh = MappedMesh::build(2, 2, MapKind::Sine, Grading::Uniform).unwrap();
    let j = mesh.elements[0].jacobian(1.0, 1.0);
    // global Jacobian 1/2 times the tile scale 1/2
    assert!((j.det - 1.0 / 16.0).abs() < 1e-15);
    let single = MappedMesh::build(1, 2, MapKind::Sine, Grading::Uniform).unwrap();
    let md = single.metric(QuadRule::Default).data[0][4];
    assert_eq!((md.x, md.y), (0.5, 0.5));
    assert!((md.w0 - 0.25).abs() < 1e-15);
    assert!((md.w2 - 4.0).abs() < 1e-14);
    // conformal at the center: G = I
    assert!((md.g1[0][0] - 1.0).abs() < 1e-14 && md.g1[0][1].abs() < 1e-14);
}

#[test]
fn sine_map_preserves_the_boundary() {
    for k in 0..=20 {
        let t = -1.0 + k as f64 / 10.0;
        assert!(sine_map(-1.0, t).0.abs() < 1e-15);
        assert!((sine_map(1.0, t).0 - 1.0).abs() < 1e-15);
        assert!(sine_map(t, -1.0).1.abs() < 1e-15);
        assert!((sine_map(t, 1.0).1 - 1.0).abs() < 1e-15);
    }
}

#[test]
fn mesh_area_is_one() {
    for kind in [MapKind::Cartesian, MapKind::Sine] {
        let mesh = MappedMesh::build(4, 4, kind, Grading::Uniform).unwrap();
        let metric = mesh.metric(QuadRule::Over);
        let w = &metric.quad.weights;
        let nq = w.len();
        let area: f64 = metric
            .data
            .iter()
            .flat_map(|d| d.iter().enumerate())
            .map(|(q, md)| w[q % nq] * w[q / nq] * md.w0)
            .sum();
        assert!((area - 1.0).abs() < 1e-9, "{kind:?}: area {area}");
    }
}

#[test]
fn neighbouring_elements_share_their_interface() {
    let mesh = MappedMesh::build(3, 3, MapKind::Sine, Grading::Uniform).unwrap();
    let m = mesh.m;
    for ey in 0..m {
        for ex in 0..m - 1 {
            let (a, b) = (&mesh.elements[ex + m * ey], &mesh.elements[ex + 1 + m * ey]);
            for k in 0..=8 {
                let t = -1.0 + k as f64 / 4.0;
                let (p, q) = (a.map_eval(1.0, t), b.map_eval(-1.0, t));
                assert!((p.0 - q.0).abs() < 1e-15 && (p.1 - q.1).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn node_positions_agree_with_element_maps() {
    let mesh = MappedMesh::build(2, 3, MapKind::Sine, Grading::BoundaryRefined).unwrap();
    let nodes = &mesh.basis.grid.nodes;
    for (e, map) in mesh.elements.iter().enumerate() {
        let (ex, ey) = (e % mesh.m, e / mesh.m);
        for j in 0..=3 {
            for i in 0..=3 {
                let a = map.map_eval(nodes[i], nodes[j]);
                let b = mesh.node_position(ex * 3 + i, ey * 3 + j);
                assert!((a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn boundary_refined_breaks_are_symmetric_and_cluster_at_walls() {
    let mesh = MappedMesh::build(6, 2, MapKind::Cartesian, Grading::BoundaryRefined).unwrap();
    let b = &mesh.breaks;
    assert_eq!(b.len(), 7);
    assert_eq!((b[0], b[6]), (0.0, 1.0));
    for i in 0..=6 {
        assert!((b[i] + b[6 - i] - 1.0).abs() < 1e-15);
    }
    assert!(b[1] - b[0] < b[3] - b[2]);
}

#[test]
fn mesh_rejects_zero_sizes() {
    assert!(MappedMesh::build(0, 2, MapKind::Cartesian, Grading::Uniform).is_err());
    assert!(MappedMesh::build(2, 0, MapKind::Cartesian, Grading::Uniform).is_err());
}

#[test]
fn summary_lists_every_element() {
    let mesh = MappedMesh::build(2, 1, MapKind::Cartesian, Grading::Uniform).unwrap();
    let mut buf = Vec::new();
    mesh.write_summary(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 5);
}

proptest! {
    #[test]
    fn sine_jacobian_matches_finite_differences(xi in -1.0f64..1.0, eta in -1.0f64..1.0) {
        let h = 1e-6;
        let j = sine_jacobian(xi, eta);
        let (xp, yp) = sine_map(xi + h, eta);
        let (xm, ym) = sine_map(xi - h, eta);
        prop_assert!((j.m[0][0] - (xp - xm) / (2.0 * h)).abs() < 1e-8);
        prop_assert!((j.m[1][0] - (yp - ym) / (2.0 * h)).abs() < 1e-8);
        let (xp, yp) = sine_map(xi, eta + h);
        let (xm, ym) = sine_map(xi, eta - h);
        prop_assert!((j.m[0][1] - (xp - xm) / (2.0 * h)).abs() < 1e-8);
        prop_assert!((j.m[1][1] - (yp - ym) / (2.0 * h)).abs() < 1e-8);
        // amplitude small enough for the map to stay invertible
        prop_assert!(j.det > 0.25 * (1.0 - SINE_AMPLITUDE * std::f64::consts::PI));
    }

    #[test]
    fn locate_inverts_the_element_map(
        m in 1usize..=5,
        sine in any::<bool>(),
        refined in any::<bool>(),
        pick in 0usize..25,
        xi in -0.999f64..0.999,
        eta in -0.999f64..0.999,
    ) {
        let kind = if sine { MapKind::Sine } else { MapKind::Cartesian };
        let grading = if refined { Grading::BoundaryRefined } else { Grading::Uniform };
        let mesh = MappedMesh::build(m, 2, kind, grading).unwrap();
        let e = pick % mesh.num_elements();
        let (x, y) = mesh.elements[e].map_eval(xi, eta);
        let (f, a, b) = mesh.locate(x, y).unwrap();
        prop_assert_eq!(f, e);
        prop_assert!((a - xi).abs() < 1e-9 && (b - eta).abs() < 1e-9);
    }

    #[test]
    fn push_covector_inverts_the_pullback(xi in -1.0f64..1.0, eta in -1.0f64..1.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let j = sine_jacobian(xi, eta);
        // pullback of a physical covector is Jᵀα
        let r = [j.m[0][0] * a + j.m[1][0] * b, j.m[0][1] * a + j.m[1][1] * b];
        let back = j.push_covector(r);
        prop_assert!((back[0] - a).abs() < 1e-12 && (back[1] - b).abs() < 1e-12);
    }
}
