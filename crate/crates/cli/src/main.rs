//! `popov`: shifted Popov, Hermite and Smith forms and modular system
//! solving over prime fields, on plain-text matrix files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use popov_core::format::{parse_matrix, parse_orders, parse_shift, poly_line, write_matrix};
use popov_core::popovform::{hermite_shift, smith_with_right_transform};
use popov_core::{
    hermite_form, popov_form, popov_order_basis, solution_basis, Error, ModularSystem, OrderSpec,
    PolMat, Shift,
};

#[derive(Parser)]
#[command(name = "popov", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shifted Popov form of a nonsingular matrix.
    Popov {
        matrix: PathBuf,
        #[command(flatten)]
        shift: ShiftOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Lower triangular Hermite form of a nonsingular matrix.
    Hermite {
        matrix: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Invariant factors of a nonsingular matrix, one per line.
    Smith {
        matrix: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Shifted Popov basis of all p with p·F ≡ 0 column-wise modulo the moduli.
    SolveModsys {
        /// k×1 matrix file holding the moduli.
        moduli: PathBuf,
        /// n×k matrix file holding the equations.
        equations: PathBuf,
        #[command(flatten)]
        shift: ShiftOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Shifted Popov order basis of F at the given orders.
    Orderbasis {
        matrix: PathBuf,
        /// Orders, one per column of F, or a single order for all columns.
        #[arg(long)]
        order: String,
        #[command(flatten)]
        shift: ShiftOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Checks a normal form predicate; exit status 4 when it fails.
    Check {
        matrix: PathBuf,
        #[command(flatten)]
        shift: ShiftOpt,
        #[arg(long, conflicts_with = "reduced", required_unless_present = "reduced")]
        popov: bool,
        #[arg(long)]
        reduced: bool,
    },
}

#[derive(Args)]
struct ShiftOpt {
    /// Comma-separated integers, `uniform`, or `hermite`.
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    shift: String,
}

#[derive(Args)]
struct OutOpt {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Singular => 2,
        Error::Internal(_) | Error::InconsistentMinimalDegree(_) => 3,
        _ => 1,
    }
}

fn read_matrix(path: &Path) -> Result<PolMat, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn resolve_shift(opt: &ShiftOpt, n: usize, square: Option<&PolMat>) -> Result<Shift, Failure> {
    let s = match opt.shift.as_str() {
        "uniform" => Shift::uniform(n),
        "hermite" => match square {
            Some(a) => hermite_shift(a),
            None => {
                return Err(Failure::Usage(
                    "the hermite shift is only defined for a square input matrix".into(),
                ))
            }
        },
        text => parse_shift(text)?,
    };
    if s.len() != n {
        return Err(Failure::Usage(format!(
            "shift has {} entries, expected {n}",
            s.len()
        )));
    }
    Ok(s)
}

fn emit(out: &OutOpt, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Popov { matrix, shift, out } => {
            let a = read_matrix(&matrix)?;
            let s = resolve_shift(&shift, a.cols(), a.is_square().then_some(&a))?;
            emit(&out, &write_matrix(&popov_form(&a, &s)?))
        }
        Command::Hermite { matrix, out } => {
            let a = read_matrix(&matrix)?;
            emit(&out, &write_matrix(&hermite_form(&a)?))
        }
        Command::Smith { matrix, out } => {
            let a = read_matrix(&matrix)?;
            let smith = smith_with_right_transform(&a)?;
            let mut text = String::new();
            for d in &smith.invariants {
                text.push_str(&poly_line(d));
                text.push('\n');
            }
            emit(&out, &text)
        }
        Command::SolveModsys {
            moduli,
            equations,
            shift,
            out,
        } => {
            let m = read_matrix(&moduli)?;
            if m.cols() != 1 {
                return Err(Failure::Usage(format!(
                    "{}: moduli file must have a single column",
                    moduli.display()
                )));
            }
            let f = read_matrix(&equations)?;
            let s = resolve_shift(&shift, f.rows(), None)?;
            let moduli: Vec<_> = (0..m.rows()).map(|i| m.get(i, 0).clone()).collect();
            let sys = ModularSystem::new(moduli, f, s)?;
            let (p, delta) = solution_basis(&sys)?;
            let delta: Vec<String> = delta.iter().map(ToString::to_string).collect();
            emit(
                &out,
                &format!("{}# delta = {}\n", write_matrix(&p), delta.join(",")),
            )
        }
        Command::Orderbasis {
            matrix,
            order,
            shift,
            out,
        } => {
            let f = read_matrix(&matrix)?;
            let mut orders = parse_orders(&order)?;
            if orders.len() == 1 && f.cols() > 1 {
                orders = vec![orders[0]; f.cols()];
            }
            if orders.len() != f.cols() {
                return Err(Failure::Usage(format!(
                    "{} orders given for {} columns",
                    orders.len(),
                    f.cols()
                )));
            }
            let s = resolve_shift(&shift, f.rows(), None)?;
            let (p, _) = popov_order_basis(&f, &OrderSpec::new(orders)?, &s)?;
            emit(&out, &write_matrix(&p))
        }
        Command::Check {
            matrix,
            shift,
            popov,
            reduced: _,
        } => {
            let a = read_matrix(&matrix)?;
            let s = resolve_shift(&shift, a.cols(), a.is_square().then_some(&a))?;
            let profile = match a.pivot_profile(&s) {
                Ok(p) => p,
                Err(Error::ZeroRow(i)) => {
                    eprintln!("row {} is zero", i + 1);
                    return Err(Failure::CheckFailed);
                }
                Err(e) => return Err(e.into()),
            };
            println!("{profile}");
            let holds = if popov {
                a.is_popov(&s)?
            } else {
                a.is_reduced(&s)?
            };
            if holds {
                Ok(())
            } else {
                let what = if popov {
                    "in shifted Popov form"
                } else {
                    "shift-reduced"
                };
                eprintln!("matrix is not {what} for shift ({s})");
                Err(Failure::CheckFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::CheckFailed) => ExitCode::from(4),
    }
}
