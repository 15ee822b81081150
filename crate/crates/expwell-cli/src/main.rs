//! Command-line surface over the expwell library.
//!
//! Exit codes: 0 success, 1 verification or tolerance failure, 2 usage or
//! input error.

// `!(a < b)` deliberately treats NaN bounds as invalid
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;
mod registry;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use expwell::oracle::compare_with_closed_form;
use expwell::potential::{derive_params, Branch, MoleculeParams};
use expwell::spectrum::{compare_with_published, energy_level};
use expwell::states::{build_state, normalize_state};
use expwell::tolerances::ORACLE_CROSS_EV;
use expwell::verify::{run_suites, Suite};

use output::{fmt_sig6, print_csv, print_json};
use registry::MoleculeRegistry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    /// Rising double-exponential well (formal levels only)
    Exp,
    /// Cross term flipped: the physically bound branch
    Morse,
}

impl From<BranchArg> for Branch {
    fn from(arg: BranchArg) -> Branch {
        match arg {
            BranchArg::Exp => Branch::Exponential,
            BranchArg::Morse => Branch::MorseFlip,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "expwell",
    version,
    about = "Bound-state spectra and eigenfunctions of exponential-type potential wells, \
             with built-in verification against an independent grid eigensolver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy levels for chosen quantum numbers
    Spectrum {
        #[arg(long)]
        molecule: String,
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Comma-separated level indices, e.g. 0,2,4,10
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        levels: Vec<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// JSON file overriding or extending the built-in molecules
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Compare computed energies against the 16 published reference values
    Table1 {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Run verification suites and report every check
    Verify {
        /// Comma-separated subset of ode,series,laplace,norm,ladder,su2,oracle
        /// (default: all)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        suites: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sample an eigenfunction phi(x) on a uniform x grid
    Wavefn {
        #[arg(long)]
        molecule: String,
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Level index
        #[arg(long)]
        n: usize,
        /// Lower edge of the x range, in units of r0
        #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
        x_min: f64,
        /// Upper edge of the x range, in units of r0
        #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 500)]
        points: usize,
        /// Require unit x-norm; fails on formal (non-normalizable) levels
        #[arg(long)]
        normalized: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Cross-check closed-form energies against the finite-difference
    /// eigensolver on the default grid
    OracleCompare {
        #[arg(long)]
        molecule: String,
        /// Comma-separated level indices (default 0,2,4)
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [0usize, 2, 4])]
        levels: Vec<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad input or flags: exit 2.
    Usage(String),
    /// A check or tolerance failed, or the math could not be carried out:
    /// exit 1.
    Failure(String),
}

type CliResult = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version
        Err(err) => err.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Spectrum { molecule, branch, levels, format, registry } => {
            cmd_spectrum(&molecule, branch.into(), &levels, format, registry.as_deref())
        }
        Command::Table1 { format, registry } => cmd_table1(format, registry.as_deref()),
        Command::Verify { suites, format } => cmd_verify(suites.as_deref(), format),
        Command::Wavefn {
            molecule,
            branch,
            n,
            x_min,
            x_max,
            points,
            normalized,
            format,
            registry,
        } => cmd_wavefn(
            &molecule,
            branch.into(),
            n,
            (x_min, x_max),
            points,
            normalized,
            format,
            registry.as_deref(),
        ),
        Command::OracleCompare { molecule, levels, format, registry } => {
            cmd_oracle_compare(&molecule, &levels, format, registry.as_deref())
        }
    }
}

fn load_registry(path: Option<&std::path::Path>) -> Result<MoleculeRegistry, CliError> {
    match path {
        None => Ok(MoleculeRegistry::built_in()),
        Some(p) => MoleculeRegistry::with_overrides(p).map_err(CliError::Usage),
    }
}

fn resolve_molecule(
    registry: &MoleculeRegistry,
    name: &str,
) -> Result<MoleculeParams, CliError> {
    registry.resolve(name).cloned().ok_or_else(|| {
        CliError::Usage(format!(
            "unknown molecule '{name}'; known: {}",
            registry.names().join(", ")
        ))
    })
}

fn cmd_spectrum(
    molecule: &str,
    branch: Branch,
    levels: &[usize],
    format: Format,
    registry: Option<&std::path::Path>,
) -> CliResult {
    let registry = load_registry(registry)?;
    let mol = resolve_molecule(&registry, molecule)?;
    let spec = mol.to_potential().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        rows.push(energy_level(&spec, branch, n).map_err(|e| CliError::Usage(e.to_string()))?);
    }
    match format {
        Format::Csv => {
            let rendered: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        fmt_sig6(r.energy),
                        fmt_sig6(r.epsilon),
                        r.physical.to_string(),
                    ]
                })
                .collect();
            print_csv("n,energy_ev,epsilon,physical", &rendered);
        }
        Format::Json => print_json(
            "spectrum",
            json!({
                "molecule": mol.name,
                "branch": branch.tag(),
                "levels": levels,
                "registry": registry.source,
            }),
            serde_json::to_value(&rows).expect("serializable rows"),
            true,
            vec![],
        ),
    }
    Ok(true)
}

fn cmd_table1(format: Format, registry: Option<&std::path::Path>) -> CliResult {
    let registry = load_registry(registry)?;
    let h2 = resolve_molecule(&registry, "H2")?;
    let lih = resolve_molecule(&registry, "LiH")?;
    let rows =
        compare_with_published(&h2, &lih).map_err(|e| CliError::Usage(e.to_string()))?;
    let pass = rows.iter().all(|r| r.pass);
    match format {
        Format::Csv => {
            let rendered: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.molecule.clone(),
                        r.branch.tag().to_string(),
                        r.n.to_string(),
                        fmt_sig6(r.computed),
                        fmt_sig6(r.published),
                        fmt_sig6(r.abs_diff),
                    ]
                })
                .collect();
            print_csv(
                "molecule,branch,n,computed_ev,published_ev,abs_diff_ev",
                &rendered,
            );
        }
        Format::Json => print_json(
            "table1",
            json!({ "registry": registry.source }),
            serde_json::to_value(&rows).expect("serializable rows"),
            pass,
            vec![],
        ),
    }
    Ok(pass)
}

fn cmd_verify(suites: Option<&[String]>, format: Format) -> CliResult {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| s.parse().map_err(|e: expwell::verify::UnknownSuite| {
                CliError::Usage(e.to_string())
            }))
            .collect::<Result<_, _>>()?,
    };
    let report = run_suites(&suites).map_err(|e| CliError::Failure(e.to_string()))?;
    match format {
        Format::Csv => {
            let rendered: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        fmt_sig6(c.measured),
                        match c.op {
                            expwell::verify::CheckOp::AtMost => "<=".to_string(),
                            expwell::verify::CheckOp::Exceeds => ">".to_string(),
                        },
                        fmt_sig6(c.tolerance),
                        c.pass.to_string(),
                    ]
                })
                .collect();
            print_csv("name,measured,op,tolerance,pass", &rendered);
        }
        Format::Json => {
            let mut extra = Vec::new();
            if let Some(su2) = &report.su2 {
                extra.push(("su2", serde_json::to_value(su2).expect("serializable report")));
            }
            print_json(
                "verify",
                json!({ "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>() }),
                serde_json::to_value(&report.checks).expect("serializable checks"),
                report.pass,
                extra,
            );
        }
    }
    Ok(report.pass)
}

#[allow(clippy::too_many_arguments)]
fn cmd_wavefn(
    molecule: &str,
    branch: Branch,
    n: usize,
    range_r0: (f64, f64),
    points: usize,
    normalized: bool,
    format: Format,
    registry: Option<&std::path::Path>,
) -> CliResult {
    let (x_min, x_max) = range_r0;
    if points < 2 {
        return Err(CliError::Usage(format!("need at least 2 points, got {points}")));
    }
    if !(x_min < x_max) {
        return Err(CliError::Usage(format!(
            "x range is empty: [{x_min}, {x_max}] (units of r0)"
        )));
    }
    let registry = load_registry(registry)?;
    let mol = resolve_molecule(&registry, molecule)?;
    let spec = mol.to_potential().map_err(|e| CliError::Usage(e.to_string()))?;
    let params = derive_params(&spec, branch).map_err(|e| CliError::Usage(e.to_string()))?;
    let beta = mol.beta();
    let state = build_state(&params, n);
    let physical = state.epsilon > 0.0;
    if !physical && normalized {
        return Err(CliError::Failure(format!(
            "level n={n} of the {} branch has epsilon = {:.6}: \
             the norm integral diverges, so no normalized profile exists; \
             rerun without --normalized",
            branch.tag(),
            state.epsilon
        )));
    }
    let state = if physical {
        normalize_state(&state, beta).map_err(|e| CliError::Failure(e.to_string()))?
    } else {
        eprintln!(
            "note: n={n} on the {} branch is a formal (non-normalizable) state; \
             emitting the raw profile",
            branch.tag()
        );
        state
    };
    let span = x_max - x_min;
    let mut samples = Vec::with_capacity(points);
    for i in 0..points {
        let u = x_min + span * i as f64 / (points - 1) as f64;
        let x = u * mol.r0;
        let z = (beta * x).exp();
        let phi = state.eval_x(x, beta);
        samples.push((x, z, phi));
    }
    match format {
        Format::Csv => {
            let rendered: Vec<Vec<String>> = samples
                .iter()
                .map(|(x, z, phi)| vec![fmt_sig6(*x), fmt_sig6(*z), fmt_sig6(*phi)])
                .collect();
            print_csv("x,z,phi", &rendered);
        }
        Format::Json => {
            let rows: Vec<_> = samples
                .iter()
                .map(|(x, z, phi)| json!({ "x": x, "z": z, "phi": phi }))
                .collect();
            print_json(
                "wavefn",
                json!({
                    "molecule": mol.name,
                    "branch": branch.tag(),
                    "n": n,
                    "x_min_r0": x_min,
                    "x_max_r0": x_max,
                    "points": points,
                    "normalized": physical,
                    "formal": !physical,
                    "registry": registry.source,
                }),
                serde_json::Value::Array(rows),
                true,
                vec![],
            );
        }
    }
    Ok(true)
}

fn cmd_oracle_compare(
    molecule: &str,
    levels: &[usize],
    format: Format,
    registry: Option<&std::path::Path>,
) -> CliResult {
    let registry = load_registry(registry)?;
    let mol = resolve_molecule(&registry, molecule)?;
    let rows =
        compare_with_closed_form(&mol, levels).map_err(|e| CliError::Failure(e.to_string()))?;
    let pass = rows.iter().all(|r| match r.difference {
        Some(d) => d.abs() <= ORACLE_CROSS_EV,
        None => true,
    });
    match format {
        Format::Csv => {
            let rendered: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.bound.to_string(),
                        fmt_sig6(r.closed_form),
                        r.oracle.map(fmt_sig6).unwrap_or_default(),
                        r.difference.map(fmt_sig6).unwrap_or_default(),
                    ]
                })
                .collect();
            print_csv("n,bound,closed_form_ev,oracle_ev,difference_ev", &rendered);
        }
        Format::Json => print_json(
            "oracle-compare",
            json!({
                "molecule": mol.name,
                "levels": levels,
                "grid": "default (x from -r0 to 12 r0, 8000 points, doubled for extrapolation)",
                "tolerance_ev": ORACLE_CROSS_EV,
                "registry": registry.source,
            }),
            serde_json::to_value(&rows).expect("serializable rows"),
            pass,
            vec![],
        ),
    }
    Ok(pass)
}
