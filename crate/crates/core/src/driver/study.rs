//! h- and p-convergence studies of the manufactured problem, with CSV output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Grading, MapKind, MappedMesh, QuadRule};
use crate::solver::{solve_problem, BcKind, ForcingMode};

use super::manufactured::{exact_problem, Manufactured};
use super::norms::{error_norms, ErrorReport};

#[derive(Clone, Debug, PartialEq)]
pub enum StudyKind {
    /// Fixed order, sweep over elements per axis.
    H { order: usize, elements: Vec<usize> },
    /// Fixed mesh, sweep over orders.
    P { elements: usize, orders: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StudyConfig {
    pub kind: StudyKind,
    pub map: MapKind,
    /// Bottom, right, top, left.
    pub bcs: [BcKind; 4],
    pub quad: QuadRule,
    pub forcing: ForcingMode,
    pub output: Option<PathBuf>,
}

impl StudyConfig {
    pub fn h(order: usize, elements: Vec<usize>, map: MapKind, bc: BcKind) -> Self {
        Self {
            kind: StudyKind::H { order, elements },
            map,
            bcs: [bc; 4],
            quad: QuadRule::Default,
            forcing: ForcingMode::Cochain,
            output: None,
        }
    }

    pub fn p(elements: usize, orders: Vec<usize>, map: MapKind, bc: BcKind) -> Self {
        Self {
            kind: StudyKind::P { elements, orders },
            ..Self::h(1, vec![1], map, bc)
        }
    }
}

/// One study row. For h-studies `rates` are observed orders
/// `log(e_prev/e)/log(h_prev/h)`; for p-studies they are error ratios
/// `e/e_prev`. Order: ω L², ω H, u L², p L².
#[derive(Clone, Debug, PartialEq)]
pub struct StudyRow {
    pub report: ErrorReport,
    pub rates: Option<[f64; 4]>,
}

fn errors(r: &ErrorReport) -> [f64; 4] {
    [r.err_w_l2, r.err_w_h, r.err_u_l2, r.err_p_l2]
}

/// Solve the manufactured problem once.
pub fn run_case(m: usize, n: usize, cfg: &StudyConfig) -> Result<ErrorReport> {
    let mesh = Arc::new(MappedMesh::build(m, n, cfg.map, Grading::Uniform)?);
    let mut problem = exact_problem(Manufactured, mesh, cfg.bcs)?;
    problem.quad = cfg.quad;
    problem.forcing_mode = cfg.forcing;
    let sol = solve_problem(&problem).map_err(|e| Error::Config(format!("M={m} N={n}: {e}")))?;
    Ok(error_norms(&sol, &Manufactured))
}

fn check_sweep(v: &[usize], what: &str) -> Result<()> {
    if v.is_empty() || v.contains(&0) {
        return Err(Error::Config(format!("{what} sweep must be nonempty and positive")));
    }
    Ok(())
}

pub fn run_h_study(cfg: &StudyConfig) -> Result<Vec<StudyRow>> {
    let StudyKind::H { order, elements } = &cfg.kind else {
        return Err(Error::Config("expected an h study".into()));
    };
    check_sweep(elements, "element")?;
    let mut rows: Vec<StudyRow> = Vec::new();
    for &m in elements {
        let report = run_case(m, *order, cfg)?;
        let rates = rows.last().map(|prev| {
            let (a, b) = (errors(&prev.report), errors(&report));
            let lh = (prev.report.h / report.h).ln();
            std::array::from_fn(|i| (a[i] / b[i]).ln() / lh)
        });
        rows.push(StudyRow { report, rates });
    }
    finish(cfg, rows)
}

pub fn run_p_study(cfg: &StudyConfig) -> Result<Vec<StudyRow>> {
    let StudyKind::P { elements, orders } = &cfg.kind else {
        return Err(Error::Config("expected a p study".into()));
    };
    check_sweep(orders, "order")?;
    check_sweep(&[*elements], "element")?;
    let mut rows: Vec<StudyRow> = Vec::new();
    for &n in orders {
        let report = run_case(*elements, n, cfg)?;
        let rates = rows.last().map(|prev| {
            let (a, b) = (errors(&prev.report), errors(&report));
            std::array::from_fn(|i| b[i] / a[i])
        });
        rows.push(StudyRow { report, rates });
    }
    finish(cfg, rows)
}

fn finish(cfg: &StudyConfig, rows: Vec<StudyRow>) -> Result<Vec<StudyRow>> {
    if let Some(path) = &cfg.output {
        std::fs::write(path, to_csv(&rows))?;
    }
    Ok(rows)
}

fn sci(v: f64) -> String {
    format!("{v:.5e}")
}

pub const CSV_HEADER: &str =
    "h,M,N,bc,map,err_w_L2,err_w_H,err_u_L2,err_p_L2,div_max,rate_w_L2,rate_w_H,rate_u_L2,rate_p_L2";

/// Deterministic CSV: header plus one line per row, 6 significant digits.
pub fn to_csv(rows: &[StudyRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for row in rows {
        let r = &row.report;
        let div = r.divergence.cochain_max.max(r.divergence.linf);
        let _ = write!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            sci(r.h),
            r.m,
            r.n,
            r.bc,
            r.map,
            sci(r.err_w_l2),
            sci(r.err_w_h),
            sci(r.err_u_l2),
            sci(r.err_p_l2),
            sci(div)
        );
        match row.rates {
            Some(rates) => rates.iter().for_each(|v| {
                let _ = write!(s, ",{}", sci(*v));
            }),
            None => s.push_str(",,,,"),
        }
        s.push('\n');
    }
    s
}
