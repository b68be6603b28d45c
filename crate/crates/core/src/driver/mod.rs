//! Error measurement, convergence studies and the cavity benchmark.

pub mod cavity;
pub mod manufactured;
pub mod norms;
pub mod study;

pub use cavity::{run_cavity, CavityResult, StreamFunction};
pub use manufactured::{exact_problem, ExactSolution, Manufactured};
pub use norms::{divergence_report, error_norms, DivergenceReport, ErrorReport};
pub use study::{run_h_study, run_p_study, to_csv, StudyConfig, StudyKind, StudyRow};
