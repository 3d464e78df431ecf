use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::LevelFilter;

use kdcut::disjunction::{
    certify_cut, is_valid_disjunction, objective_cut, RoundingMode, Validity,
};
use kdcut::fixtures;
use kdcut::format::{parse_cut, parse_disjunction, parse_milp, write_disjunction, write_milp};
use kdcut::model::{MilpInstance, Point};
use kdcut::oracle::{oracle_solve, OracleResult};
use kdcut::projection::{fm_project, project_x};
use kdcut::rational::{fmt_int_vec, fmt_vec, parse_rational, Rational};
use kdcut::solver::{solve, GmiRound, MilpResult, SolveOptions};
use kdcut::{Error, Result};

/// Exact cutting planes for bounded mixed-integer linear programs.
///
/// Instance arguments accept a file path, `-` for standard input, or
/// `builtin:<name>`.
#[derive(Parser)]
#[command(name = "kdcut", version)]
struct Cli {
    /// Log to stderr; repeat for more detail (-vvv shows simplex pivots).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weak,
    Strict,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the exact cutting-plane loop.
    Solve {
        file: String,
        /// Print the event trace after the result.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 100)]
        max_outer: usize,
        #[arg(long, default_value_t = 200)]
        max_inner: usize,
        /// Also cut on the objective row when the objective is integral.
        #[arg(long)]
        include_x0: bool,
        /// One Gomory cut per round instead of one per fractional row.
        #[arg(long)]
        least_index: bool,
    },
    /// Project the relaxation onto the integer variables.
    Project {
        file: String,
        /// Drop redundant rows.
        #[arg(long)]
        minimize: bool,
        /// Use Fourier–Motzkin elimination instead of extreme rays.
        #[arg(long)]
        fm: bool,
    },
    /// Disjunctive cut along the objective at level `--gamma`.
    ObjectiveCut {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, value_enum, default_value_t = Mode::Weak)]
        mode: Mode,
    },
    /// Check that a disjunction covers every integer point.
    CheckDisjunction {
        file: String,
        /// Half-width of the search box when the uncovered region is unbounded.
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Check a cut against a disjunction on an instance's relaxation.
    CertifyCut {
        file: String,
        disjunction: String,
        /// The cut as `a.. | g.. <= rhs`.
        #[arg(long, allow_hyphen_values = true)]
        cut: String,
    },
    /// Solve by brute-force enumeration.
    Oracle { file: String },
    /// Write the exponential-facet integer polytope in R^{n+1}.
    GenExpon { n: usize },
    /// Write a built-in instance.
    Builtin { name: String },
}

fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn load_instance(arg: &str) -> Result<MilpInstance> {
    match arg.strip_prefix("builtin:") {
        Some(name) => fixtures::builtin(name),
        None => parse_milp(&read_text(arg)?),
    }
}

fn point_lines(point: &Point, value: &Rational) -> String {
    let line = |tag: &str, v: &[Rational]| {
        if v.is_empty() {
            tag.to_string()
        } else {
            format!("{tag} {}", fmt_vec(v))
        }
    };
    format!(
        "value {value}\n{}\n{}\n",
        line("x", &point.x),
        line("y", &point.y)
    )
}

fn run(cli: Cli) -> Result<(String, u8)> {
    let mut out = String::new();
    let code = match cli.command {
        Command::Solve {
            file,
            trace,
            max_outer,
            max_inner,
            include_x0,
            least_index,
        } => {
            let inst = load_instance(&file)?;
            let opts = SolveOptions {
                max_outer_iterations: max_outer.max(1),
                max_inner_iterations: max_inner.max(1),
                trace,
                include_x0,
                gmi_round: if least_index {
                    GmiRound::LeastIndex
                } else {
                    GmiRound::AllFractional
                },
            };
            let result = solve(&inst, &opts)?;
            let code = match &result {
                MilpResult::Optimal { point, value, .. } => {
                    out.push_str("status optimal\n");
                    out.push_str(&point_lines(point, value));
                    0
                }
                MilpResult::Infeasible { .. } => {
                    out.push_str("status infeasible\n");
                    1
                }
                MilpResult::IterationLimit { .. } => {
                    out.push_str("status iteration-limit\n");
                    2
                }
            };
            if trace {
                out.push_str(&result.trace().to_string());
            }
            code
        }
        Command::Project { file, minimize, fm } => {
            let inst = load_instance(&file)?;
            let poly = inst.polyhedron();
            let mut proj = if fm {
                fm_project(&poly)
            } else {
                project_x(&poly)
            };
            if minimize {
                proj = proj.minimized();
            }
            let mut shadow =
                MilpInstance::new(inst.p, 0, vec![Rational::default(); inst.p], vec![])?;
            for row in proj.rows {
                shadow.push_row(row.d, vec![], row.rhs)?;
            }
            out.push_str(&write_milp(&shadow));
            0
        }
        Command::ObjectiveCut { file, gamma, mode } => {
            let inst = load_instance(&file)?;
            let gamma = parse_rational(&gamma)?;
            let mode = match mode {
                Mode::Weak => RoundingMode::Weak,
                Mode::Strict => RoundingMode::Strict,
            };
            let report = objective_cut(&inst.polyhedron(), &inst.c, &inst.h, &gamma, mode)?;
            out.push_str(&format!("gamma_hat {}\n", report.gamma_hat));
            for t in &report.per_ray {
                let g = t
                    .gamma
                    .as_ref()
                    .map_or("-".to_string(), ToString::to_string);
                out.push_str(&format!(
                    "ray {} d {} delta {} gamma {g}\n",
                    t.ray,
                    fmt_int_vec(&t.d),
                    t.delta
                ));
            }
            out.push_str(&write_disjunction(&report.disjunction));
            0
        }
        Command::CheckDisjunction { file, bound } => {
            let dis = parse_disjunction(&read_text(&file)?)?;
            match is_valid_disjunction(&dis, bound) {
                Validity::Valid => {
                    out.push_str("valid\n");
                    0
                }
                Validity::Invalid(w) => {
                    out.push_str(&format!("invalid {}\n", fmt_int_vec(&w)));
                    1
                }
                Validity::UnboundedBody => {
                    out.push_str("unbounded-body\n");
                    2
                }
            }
        }
        Command::CertifyCut {
            file,
            disjunction,
            cut,
        } => {
            let inst = load_instance(&file)?;
            let dis = parse_disjunction(&read_text(&disjunction)?)?;
            if dis.p() != inst.p {
                return Err(Error::Dimension(format!(
                    "disjunction has p = {}, instance p = {}",
                    dis.p(),
                    inst.p
                )));
            }
            let cut = parse_cut(&cut, inst.p, inst.q)?;
            let ok = certify_cut(&inst.polyhedron(), &cut, &dis);
            out.push_str(&format!("certified {ok}\n"));
            u8::from(!ok)
        }
        Command::Oracle { file } => match oracle_solve(&load_instance(&file)?)? {
            OracleResult::Optimal { point, value } => {
                out.push_str("status optimal\n");
                out.push_str(&point_lines(&point, &value));
                0
            }
            OracleResult::Infeasible => {
                out.push_str("status infeasible\n");
                1
            }
        },
        Command::GenExpon { n } => {
            if n < 1 {
                return Err(Error::Dimension("gen-expon needs n >= 1".into()));
            }
            out.push_str(&write_milp(&fixtures::expon_instance(n)));
            0
        }
        Command::Builtin { name } => {
            out.push_str(&write_milp(&fixtures::builtin(&name)?));
            0
        }
    };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        2 => LevelFilter::Debug,
        _ => LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
