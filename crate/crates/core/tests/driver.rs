use mmsem::driver::cavity::{cavity_problem, velocity_at, write_cavity_outputs};
use mmsem::driver::study::CSV_HEADER;
use mmsem::driver::{run_cavity, run_h_study, run_p_study, to_csv, StreamFunction, StudyConfig, StudyKind};
use mmsem::geometry::{Grading, MapKind};
use mmsem::solver::{solve_problem, BcKind};
use mmsem::Error;

#[test]
fn h_study_rows_carry_rates_after_the_first() {
    let cfg = StudyConfig::h(2, vec![2, 4, 8], MapKind::Cartesian, BcKind::Velocity);
    let rows = run_h_study(&cfg).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].rates.is_none());
    for w in rows.windows(2) {
        let (a, b) = (&w[0].report, &w[1].report);
        let rates = w[1].rates.unwrap();
        let expected = (a.err_u_l2 / b.err_u_l2).ln() / (a.h / b.h).ln();
        assert!((rates[2] - expected).abs() < 1e-12);
        assert!((a.h / b.h - 2.0).abs() < 1e-14);
    }
}

#[test]
fn h_norm_combines_value_and_gradient_errors() {
    let cfg = StudyConfig::p(2, vec![3], MapKind::Sine, BcKind::TangentialVelocityPressure);
    let r = &run_p_study(&cfg).unwrap()[0].report;
    assert!((r.err_w_h.powi(2) - r.err_w_l2.powi(2) - r.err_dw_l2.powi(2)).abs() < 1e-12 * r.err_w_h.powi(2));
    assert_eq!(r.dofs, [49, 84, 36]);
    assert_eq!(r.bc, "tanvel-pres");
    assert_eq!(r.map, "sine");
}

#[test]
fn p_study_rates_are_error_ratios() {
    let cfg = StudyConfig::p(2, vec![2, 3], MapKind::Cartesian, BcKind::VorticityNormalVelocity);
    let rows = run_p_study(&cfg).unwrap();
    let ratio = rows[1].report.err_p_l2 / rows[0].report.err_p_l2;
    assert_eq!(rows[1].rates.unwrap()[3], ratio);
    assert!(ratio < 1.0);
}

#[test]
fn csv_is_deterministic_with_fixed_header() {
    let mut cfg = StudyConfig::h(2, vec![1, 2], MapKind::Sine, BcKind::Velocity);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    cfg.output = Some(path.clone());
    let first = to_csv(&run_h_study(&cfg).unwrap());
    let second = to_csv(&run_h_study(&cfg).unwrap());
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let lines: Vec<_> = first.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    let cols = CSV_HEADER.split(',').count();
    assert!(lines.iter().all(|l| l.split(',').count() == cols));
    // first row has no rates
    assert!(lines[1].ends_with(",,,,"));
    assert!(lines[2].starts_with("5.00000e-1,2,2,vel,sine,"));
}

#[test]
fn study_config_errors() {
    let h = StudyConfig::h(2, vec![], MapKind::Cartesian, BcKind::Velocity);
    assert!(matches!(run_h_study(&h), Err(Error::Config(_))));
    let zero = StudyConfig::h(2, vec![2, 0], MapKind::Cartesian, BcKind::Velocity);
    assert!(run_h_study(&zero).is_err());
    let p = StudyConfig::p(2, vec![2], MapKind::Cartesian, BcKind::Velocity);
    assert!(run_h_study(&p).is_err());
    assert!(matches!(
        run_p_study(&StudyConfig { kind: StudyKind::P { elements: 0, orders: vec![2] }, ..p.clone() }),
        Err(Error::Config(_))
    ));
}

#[test]
fn cavity_stream_function_is_path_independent() {
    let res = run_cavity(3, 4, Grading::BoundaryRefined, 9).unwrap();
    let f = &res.fields;
    assert!(res.stream.path_discrepancy(&f.mesh, &f.velocity) < 1e-12);
    assert!(res.stream.flux_mismatch(&f.mesh, &f.velocity) < 1e-12);
    assert!(res.divergence.cochain_max < 1e-12);
    // the lid drags the top of the centerline forward (tangential velocity is
    // a natural condition, so only approximately) and the return flow is
    // negative below
    let (_, top) = res.u_centerline.last().unwrap();
    assert!((top - 1.0).abs() < 0.1, "{top}");
    assert!(res.u_centerline.iter().any(|&(_, u)| u < -0.1));
    assert_eq!(res.v_centerline.len(), 9);
}

#[test]
fn stream_function_detects_a_source() {
    let problem = cavity_problem(2, 2, Grading::Uniform).unwrap();
    let sol = solve_problem(&problem).unwrap();
    let mut u = sol.velocity.clone();
    u.values[7] += 1e-3;
    let s = StreamFunction::from_fluxes(&sol.mesh, &u);
    assert!(s.path_discrepancy(&sol.mesh, &u) > 1e-4 || s.flux_mismatch(&sol.mesh, &u) > 1e-4);
}

#[test]
fn cavity_normal_velocity_vanishes_on_walls() {
    let sol = solve_problem(&cavity_problem(2, 5, Grading::Uniform).unwrap()).unwrap();
    for t in [0.1, 0.37, 0.8] {
        for (x, y, k) in [(0.0, t, 0), (1.0, t, 0), (t, 0.0, 1), (t, 1.0, 1)] {
            let v = velocity_at(&sol, x, y).unwrap();
            assert!(v[k].abs() < 1e-12, "({x}, {y}): {v:?}");
        }
    }
    assert!(velocity_at(&sol, 1.5, 0.5).is_err());
}

#[test]
fn cavity_outputs_are_written() {
    let res = run_cavity(2, 2, Grading::Uniform, 3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_cavity_outputs(&res, dir.path(), 3).unwrap();
    for name in ["vorticity.dat", "velocity.dat", "pressure.dat", "stream.dat", "u_centerline.csv", "v_centerline.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let u = std::fs::read_to_string(dir.path().join("u_centerline.csv")).unwrap();
    assert_eq!(u.lines().count(), 4);
    // velocity dumps have four columns
    let vel = std::fs::read_to_string(dir.path().join("velocity.dat")).unwrap();
    assert!(vel.lines().filter(|l| !l.is_empty()).all(|l| l.split_whitespace().count() == 4));
}
