//! Error norms and divergence diagnostics.

use crate::assembly::{element_grid_values, element_reference_value, physical_value, FieldValue};
use crate::geometry::QuadRule;
use crate::solver::SolutionFields;
use crate::topology::{coboundary_apply, Cochain};

use super::manufactured::ExactSolution;

/// Divergence of the discrete velocity.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DivergenceReport {
    /// `max |E²¹ u|`
    pub cochain_max: f64,
    pub l1: f64,
    pub l2: f64,
    /// Maximum over quadrature points and dense samples.
    pub linf: f64,
}

/// Errors of one solve against an exact solution.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub h: f64,
    pub m: usize,
    pub n: usize,
    pub bc: String,
    pub map: String,
    pub err_w_l2: f64,
    pub err_dw_l2: f64,
    pub err_w_h: f64,
    pub err_u_l2: f64,
    pub err_p_l2: f64,
    pub divergence: DivergenceReport,
    /// Global ω, u, p counts.
    pub dofs: [usize; 3],
}

/// Label for a set of segment BCs: the common name if uniform, else the four
/// names joined by `/` in bottom, right, top, left order.
pub fn bc_label(bcs: &[crate::solver::BcKind; 4]) -> String {
    if bcs.iter().all(|b| *b == bcs[0]) {
        bcs[0].name().to_string()
    } else {
        bcs.iter().map(|b| b.name()).collect::<Vec<_>>().join("/")
    }
}

/// Errors measured with overintegrated Gauss quadrature (N + 3 points per
/// axis). When the pressure was gauged to zero mean, the exact pressure is
/// compared after removing its own mean.
pub fn error_norms(sol: &SolutionFields, exact: &dyn ExactSolution) -> ErrorReport {
    let mesh = &sol.mesh;
    let dofs = &sol.dofs;
    let metric = mesh.metric(QuadRule::Over);
    let w = &metric.quad.weights;
    let nq = w.len();
    let e10 = mesh.complex.incidence(1).expect("1 ≤ dim");
    let dw = coboundary_apply(&e10, &sol.vorticity).expect("degrees match");

    let p_mean = if sol.gauge_fixed {
        let mut s = 0.0;
        for data in &metric.data {
            for (q, md) in data.iter().enumerate() {
                s += w[q % nq] * w[q / nq] * md.w0 * exact.pressure(md.x, md.y);
            }
        }
        s
    } else {
        0.0
    };

    let (mut ew, mut edw, mut eu, mut ep) = (0.0, 0.0, 0.0, 0.0);
    for (e, data) in metric.data.iter().enumerate() {
        let wv = element_grid_values(dofs, &sol.vorticity, e, &metric.table);
        let dv = element_grid_values(dofs, &dw, e, &metric.table);
        let uv = element_grid_values(dofs, &sol.velocity, e, &metric.table);
        let pv = element_grid_values(dofs, &sol.pressure, e, &metric.table);
        for (q, md) in data.iter().enumerate() {
            let wq = w[q % nq] * w[q / nq] * md.w0;
            ew += wq * (wv[q][0] - exact.vorticity(md.x, md.y)).powi(2);
            let g = md.jac.push_covector(dv[q]);
            let ge = exact.vorticity_gradient(md.x, md.y);
            edw += wq * ((g[0] - ge[0]).powi(2) + (g[1] - ge[1]).powi(2));
            let a = md.jac.push_covector(uv[q]);
            let ue = exact.velocity(md.x, md.y);
            eu += wq * ((a[1] - ue[0]).powi(2) + (-a[0] - ue[1]).powi(2));
            let p = pv[q][0] / md.jac.det;
            ep += wq * (p - (exact.pressure(md.x, md.y) - p_mean)).powi(2);
        }
    }
    ErrorReport {
        h: mesh.h(),
        m: mesh.m,
        n: mesh.order,
        bc: bc_label(&sol.bcs),
        map: mesh.kind.name().to_string(),
        err_w_l2: ew.sqrt(),
        err_dw_l2: edw.sqrt(),
        err_w_h: (ew + edw).sqrt(),
        err_u_l2: eu.sqrt(),
        err_p_l2: ep.sqrt(),
        divergence: divergence_report(sol, 20),
        dofs: [dofs.count(0), dofs.count(1), dofs.count(2)],
    }
}

/// Divergence of a 1-cochain: cochain-level maximum and pointwise norms of the
/// reconstructed 2-form `E²¹u`, sampled on quadrature points and a uniform
/// `samples × samples` grid per element.
pub fn divergence_of(sol: &SolutionFields, u: &Cochain, samples: usize) -> DivergenceReport {
    let mesh = &sol.mesh;
    let dofs = &sol.dofs;
    let e21 = mesh.complex.incidence(2).expect("2 ≤ dim");
    let d = coboundary_apply(&e21, u).expect("degrees match");
    let metric = mesh.metric(QuadRule::Over);
    let w = &metric.quad.weights;
    let nq = w.len();
    let (mut l1, mut l2, mut linf) = (0.0f64, 0.0f64, 0.0f64);
    for (e, data) in metric.data.iter().enumerate() {
        let dv = element_grid_values(dofs, &d, e, &metric.table);
        for (q, md) in data.iter().enumerate() {
            let wq = w[q % nq] * w[q / nq] * md.w0;
            let div = (dv[q][0] / md.jac.det).abs();
            l1 += wq * div;
            l2 += wq * div * div;
            linf = linf.max(div);
        }
    }
    let k = samples.max(2);
    let pts: Vec<f64> = (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect();
    for (e, map) in mesh.elements.iter().enumerate() {
        for &eta in &pts {
            for &xi in &pts {
                let r = element_reference_value(mesh, dofs, &d, e, xi, eta);
                if let FieldValue::Scalar(v) = physical_value(2, r, &map.jacobian(xi, eta)) {
                    linf = linf.max(v.abs());
                }
            }
        }
    }
    DivergenceReport {
        cochain_max: d.max_abs(),
        l1,
        l2: l2.sqrt(),
        linf,
    }
}

/// Divergence of the solved velocity.
pub fn divergence_report(sol: &SolutionFields, samples: usize) -> DivergenceReport {
    divergence_of(sol, &sol.velocity, samples)
}
