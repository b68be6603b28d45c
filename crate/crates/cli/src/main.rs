use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use mmsem::driver::cavity::{run_cavity, write_cavity_outputs};
use mmsem::driver::norms::error_norms;
use mmsem::driver::study::{run_h_study, run_p_study, to_csv, StudyConfig, StudyKind, StudyRow};
use mmsem::driver::{exact_problem, Manufactured};
use mmsem::geometry::{Grading, MapKind, MappedMesh, QuadRule};
use mmsem::solver::{solve_problem, BcKind, ForcingMode};

#[derive(Parser, Debug)]
#[command(name = "mmsem", version, about = "Mimetic spectral element Stokes solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Map {
    Cartesian,
    Sine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Bc {
    Vel,
    TanvelPres,
    VortNormvel,
    VortPres,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Quad {
    Default,
    Over,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Forcing {
    Cochain,
    Consistent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Grade {
    Uniform,
    Refined,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Mesh map
    #[arg(long, value_enum, default_value = "cartesian")]
    map: Map,
    /// Boundary condition type applied to all four sides
    #[arg(long, value_enum, default_value = "vel")]
    bc: Bc,
    /// Volume quadrature: GLL with N+1 points, or Gauss with N+3
    #[arg(long, value_enum, default_value = "default")]
    quad: Quad,
    /// Discrete body force
    #[arg(long, value_enum, default_value = "cochain")]
    forcing: Forcing,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// h-convergence of the manufactured problem
    ConvergeH {
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Elements per axis, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8, 16, 32, 64])]
        elements: Vec<usize>,
        #[command(flatten)]
        common: Common,
        /// CSV output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// p-convergence of the manufactured problem
    ConvergeP {
        /// Orders, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 6, 8, 10, 12])]
        order: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        elements: usize,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lid-driven cavity
    Cavity {
        #[arg(long, default_value_t = 6)]
        elements: usize,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, value_enum, default_value = "refined")]
        grading: Grade,
        /// Output directory for field dumps and centerlines
        #[arg(long, default_value = "cavity-out")]
        out: PathBuf,
        /// Samples per axis per element (and along centerlines)
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Single manufactured-problem solve
    Solve {
        #[arg(long, default_value_t = 4)]
        elements: usize,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Common {
    fn config(&self, kind: StudyKind, out: Option<PathBuf>) -> StudyConfig {
        StudyConfig {
            kind,
            map: match self.map {
                Map::Cartesian => MapKind::Cartesian,
                Map::Sine => MapKind::Sine,
            },
            bcs: [match self.bc {
                Bc::Vel => BcKind::Velocity,
                Bc::TanvelPres => BcKind::TangentialVelocityPressure,
                Bc::VortNormvel => BcKind::VorticityNormalVelocity,
                Bc::VortPres => BcKind::VorticityPressure,
            }; 4],
            quad: match self.quad {
                Quad::Default => QuadRule::Default,
                Quad::Over => QuadRule::Over,
            },
            forcing: match self.forcing {
                Forcing::Cochain => ForcingMode::Cochain,
                Forcing::Consistent => ForcingMode::Consistent,
            },
            output: out,
        }
    }
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn emit(rows: &[StudyRow], out: &Option<PathBuf>) {
    if out.is_none() {
        print!("{}", to_csv(rows));
    }
}

fn run(cli: Cli) -> mmsem::Result<()> {
    match cli.command {
        Command::ConvergeH { order, elements, common, out } => {
            if order == 0 || elements.contains(&0) {
                usage_error("--order and --elements must be positive");
            }
            let cfg = common.config(StudyKind::H { order, elements }, out.clone());
            emit(&run_h_study(&cfg)?, &out);
        }
        Command::ConvergeP { order, elements, common, out } => {
            if elements == 0 || order.contains(&0) {
                usage_error("--order and --elements must be positive");
            }
            let cfg = common.config(StudyKind::P { elements, orders: order }, out.clone());
            emit(&run_p_study(&cfg)?, &out);
        }
        Command::Cavity { elements, order, grading, out, samples } => {
            if elements == 0 || order == 0 || samples < 2 {
                usage_error("--elements and --order must be positive and --samples at least 2");
            }
            let grading = match grading {
                Grade::Uniform => Grading::Uniform,
                Grade::Refined => Grading::BoundaryRefined,
            };
            let res = run_cavity(elements, order, grading, samples)?;
            write_cavity_outputs(&res, &out, samples)?;
            let d = res.divergence;
            println!(
                "divergence: cochain max {:.3e}, L1 {:.3e}, L2 {:.3e}, Linf {:.3e}",
                d.cochain_max, d.l1, d.l2, d.linf
            );
            println!(
                "stream function: path discrepancy {:.3e}",
                res.stream.path_discrepancy(&res.fields.mesh, &res.fields.velocity)
            );
            println!("outputs written to {}", out.display());
        }
        Command::Solve { elements, order, common, out } => {
            if elements == 0 || order == 0 {
                usage_error("--order and --elements must be positive");
            }
            let cfg = common.config(StudyKind::H { order, elements: vec![elements] }, out.clone());
            let mesh = Arc::new(MappedMesh::build(elements, order, cfg.map, Grading::Uniform)?);
            let mut problem = exact_problem(Manufactured, mesh, cfg.bcs)?;
            problem.quad = cfg.quad;
            problem.forcing_mode = cfg.forcing;
            let sol = solve_problem(&problem)?;
            let rows = vec![StudyRow {
                report: error_norms(&sol, &Manufactured),
                rates: None,
            }];
            match &out {
                Some(p) => std::fs::write(p, to_csv(&rows))?,
                None => print!("{}", to_csv(&rows)),
            }
            eprintln!(
                "free dofs {}, relative residual {:.3e}",
                sol.stats.free_dofs, sol.stats.residual
            );
            if sol.stats.projected {
                eprintln!("velocity determined up to a potential-flow nullspace (projected out)");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
