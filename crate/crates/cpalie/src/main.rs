//! Command-line surface: catalog access, file validation, product
//! verification, chain reports, classification, decomposition, the
//! constructive recipes, and the named check suite.
//!
//! Exit codes: 0 success/pass, 1 check failure, 2 usage or format error.

use clap::{Parser, Subcommand, ValueEnum};
use cpalie::catalog::{list_keys, make, CatalogKey};
use cpalie::cpa::{
    center_construction_product, central_z_product, classify, cocycle_product, cocycle_space,
    common_eigenvector, componentwise_product, ideal_chain, lie_eigenfunctional_product,
    phi_decompose, verify_cpa, CPAProduct, ClassifyMethod,
};
use cpalie::json::{
    algebra_from_json, algebra_to_json, classification_to_json, matrix_from_json,
    product_from_json, product_to_json, subspace_to_json_value,
};
use cpalie::lie::{LieAlgebra, Violation};
use cpalie::linalg::{parse_rational, Rational};
use cpalie::suite::{case_ids, run_case, run_suite, suite_to_json, SuiteCase, SuiteStatus};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cpalie",
    version,
    about = "Exact tools for commutative post-Lie algebra structures on Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in algebras or emit one as JSON.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Check the bracket axioms of an algebra file.
    Validate { algebra: PathBuf },
    /// Check the product axioms of a product file against an algebra.
    Verify { algebra: PathBuf, product: PathBuf },
    /// Report the ascending annihilator chain of a verified product.
    Chain { algebra: PathBuf, product: PathBuf },
    /// Solve for all products on an algebra and report the solution set.
    Classify {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::General)]
        method: MethodArg,
    },
    /// Split an algebra along the spectrum of an endomorphism defining an
    /// inner product.
    Decompose { algebra: PathBuf, phi: PathBuf },
    /// Build a product by one of the constructive recipes.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Run the named check suite (all cases, or one with --case).
    Suite {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Emit { key: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    General,
    Inner,
}

#[derive(Subcommand)]
enum Recipe {
    /// Product from a cocycle on the derived ideal (pick a generator with
    /// --index when the space has dimension above one).
    Cocycle {
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Product x·y = [[z, x], y] for a z central in the derived ideal;
    /// pass z as comma-separated rationals, e.g. --z 0,0,1.
    CentralZ {
        algebra: PathBuf,
        #[arg(long)]
        z: String,
    },
    /// Product lambda(x) lambda(y) v from a common eigenvector v of a
    /// solvable algebra; searched automatically unless --v is given.
    Eigenfunctional {
        algebra: PathBuf,
        #[arg(long)]
        v: Option<String>,
    },
    /// Canonical nonzero product on a non-perfect algebra with nontrivial
    /// center.
    CenterConstruction { algebra: PathBuf },
    /// Block product on the direct sum of two verified structures.
    Componentwise {
        algebra1: PathBuf,
        product1: PathBuf,
        algebra2: PathBuf,
        product2: PathBuf,
    },
}

/// Prints a line to stdout; a closed pipe ends the process quietly instead
/// of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        if writeln!(lock, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// A failed mathematical check (exit 1), as opposed to a usage or format
/// problem (exit 2, raised as `Usage`).
enum CliError {
    Check(String),
    Usage(String),
}

impl CliError {
    fn check(e: impl std::fmt::Display) -> Self {
        CliError::Check(e.to_string())
    }

    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, CliError> {
    algebra_from_json(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_product(path: &Path) -> Result<CPAProduct, CliError> {
    product_from_json(&read_text(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn parse_vector(s: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != dim {
        return Err(CliError::usage(format!(
            "vector has {} entries, the algebra has dimension {dim}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).map_err(|_| CliError::usage(format!("bad rational {p:?}"))))
        .collect()
}

fn violation_line(v: &Violation) -> String {
    match v {
        Violation::Antisymmetry { i, j, k } => format!(
            "antisymmetry fails on basis triple ({}, {}, {})",
            i + 1,
            j + 1,
            k + 1
        ),
        Violation::Jacobi { i, j, k } => format!(
            "Jacobi identity fails on basis triple ({}, {}, {})",
            i + 1,
            j + 1,
            k + 1
        ),
    }
}

fn cmd_catalog(action: CatalogCmd) -> Result<(), CliError> {
    match action {
        CatalogCmd::List => {
            for key in list_keys() {
                let l = make(&key).map_err(CliError::usage)?;
                out!("{:<24} dim {:>2}", key.to_string(), l.dim());
            }
            Ok(())
        }
        CatalogCmd::Emit { key } => {
            let parsed: CatalogKey = key.parse().map_err(CliError::usage)?;
            let l = make(&parsed).map_err(CliError::usage)?;
            out!("{}", algebra_to_json(&l));
            Ok(())
        }
    }
}

fn cmd_validate(path: &Path) -> Result<(), CliError> {
    let l = load_algebra(path)?;
    let violations = l.validate();
    if violations.is_empty() {
        out!("valid: {} (dim {})", l.name(), l.dim());
        Ok(())
    } else {
        for v in &violations {
            out!("{}", violation_line(v));
        }
        Err(CliError::Check(format!(
            "{} is not a Lie algebra ({} violation(s))",
            l.name(),
            violations.len()
        )))
    }
}

fn cmd_verify(algebra: &Path, product: &Path) -> Result<(), CliError> {
    let l = load_algebra(algebra)?;
    let p = load_product(product)?;
    let report = verify_cpa(&l, &p).map_err(CliError::check)?;
    out!(
        "commutativity: {}",
        if report.eq4_ok { "ok" } else { "FAIL" }
    );
    out!(
        "bracket rule: {}",
        if report.eq5_ok { "ok" } else { "FAIL" }
    );
    out!(
        "derivation rule: {}",
        if report.eq6_ok { "ok" } else { "FAIL" }
    );
    match report.first_violation {
        None => Ok(()),
        Some((eq, (i, j, k), ref residual)) => {
            let name = match eq {
                4 => "commutativity",
                5 => "bracket rule",
                _ => "derivation rule",
            };
            let coeffs: Vec<String> = residual
                .iter()
                .map(cpalie::linalg::format_rational)
                .collect();
            out!(
                "first violation: {name} at basis triple ({}, {}, {}), residual [{}]",
                i + 1,
                j + 1,
                k + 1,
                coeffs.join(", ")
            );
            Err(CliError::Check("product fails the axioms".into()))
        }
    }
}

fn cmd_chain(algebra: &Path, product: &Path) -> Result<(), CliError> {
    let l = load_algebra(algebra)?;
    let p = load_product(product)?;
    let res = ideal_chain(&l, &p).map_err(CliError::check)?;
    let doc = serde_json::json!({
        "chain": res.chain.iter().map(subspace_to_json_value).collect::<Vec<_>>(),
        "k_stable": res.k_stable,
        "nilpotency_index": res.nilpotency_index,
        "nondegenerate": res.nondegenerate,
    });
    out!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("chain serialization")
    );
    Ok(())
}

fn cmd_classify(algebra: &Path, method: MethodArg) -> Result<(), CliError> {
    let l = load_algebra(algebra)?;
    let method = match method {
        MethodArg::General => ClassifyMethod::General,
        MethodArg::Inner => ClassifyMethod::Inner,
    };
    let cl = classify(&l, method).map_err(CliError::check)?;
    out!("{}", classification_to_json(&cl));
    Ok(())
}

fn cmd_decompose(algebra: &Path, phi_path: &Path) -> Result<(), CliError> {
    let l = load_algebra(algebra)?;
    let phi = matrix_from_json(&read_text(phi_path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", phi_path.display())))?;
    let dec = phi_decompose(&l, &phi).map_err(CliError::check)?;
    let doc = serde_json::json!({
        "eigenvalues": dec.eigenvalues.iter().map(cpalie::linalg::format_rational).collect::<Vec<_>>(),
        "n_part": subspace_to_json_value(&dec.n_part),
        "h_part": subspace_to_json_value(&dec.h_part),
        "checks": {
            "n_nilpotent_phi": dec.checks.n_nilpotent_phi,
            "h_automorphism_phi": dec.checks.h_automorphism_phi,
            "h_metabelian": dec.checks.h_metabelian,
            "both_ideals": dec.checks.both_ideals,
            "direct_sum": dec.checks.direct_sum,
            "all": dec.checks.all(),
        },
    });
    out!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("decomposition serialization")
    );
    if dec.checks.all() {
        Ok(())
    } else {
        Err(CliError::Check("a decomposition check failed".into()))
    }
}

fn cmd_construct(recipe: Recipe) -> Result<(), CliError> {
    match recipe {
        Recipe::Cocycle { algebra, index } => {
            let l = load_algebra(&algebra)?;
            let ideal = l.derived();
            let space = cocycle_space(&l, &ideal).map_err(CliError::check)?;
            if space.is_empty() {
                return Err(CliError::Check(
                    "the cocycle space on the derived ideal is zero".into(),
                ));
            }
            let f = space.get(index).ok_or_else(|| {
                CliError::usage(format!(
                    "--index {index} out of range, the cocycle space has dimension {}",
                    space.len()
                ))
            })?;
            let p = cocycle_product(&l, &ideal, f).map_err(CliError::check)?;
            out!("{}", product_to_json(&p));
            Ok(())
        }
        Recipe::CentralZ { algebra, z } => {
            let l = load_algebra(&algebra)?;
            let zv = parse_vector(&z, l.dim())?;
            let p = central_z_product(&l, &l.derived(), &zv).map_err(CliError::check)?;
            out!("{}", product_to_json(&p));
            Ok(())
        }
        Recipe::Eigenfunctional { algebra, v } => {
            let l = load_algebra(&algebra)?;
            let vector = match v {
                Some(s) => parse_vector(&s, l.dim())?,
                None => common_eigenvector(&l)
                    .map_err(CliError::check)?
                    .ok_or_else(|| {
                        CliError::Check("no common eigenvector with rational weights".into())
                    })?,
            };
            let (p, _) = lie_eigenfunctional_product(&l, &vector).map_err(CliError::check)?;
            out!("{}", product_to_json(&p));
            Ok(())
        }
        Recipe::CenterConstruction { algebra } => {
            let l = load_algebra(&algebra)?;
            let p = center_construction_product(&l).map_err(CliError::check)?;
            out!("{}", product_to_json(&p));
            Ok(())
        }
        Recipe::Componentwise {
            algebra1,
            product1,
            algebra2,
            product2,
        } => {
            let l1 = load_algebra(&algebra1)?;
            let p1 = load_product(&product1)?;
            let l2 = load_algebra(&algebra2)?;
            let p2 = load_product(&product2)?;
            let (sum, q) = componentwise_product(&l1, &p1, &l2, &p2).map_err(CliError::check)?;
            let doc = serde_json::json!({
                "algebra": serde_json::from_str::<serde_json::Value>(&algebra_to_json(&sum))
                    .expect("algebra doc"),
                "product": serde_json::from_str::<serde_json::Value>(&product_to_json(&q))
                    .expect("product doc"),
            });
            out!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("sum serialization")
            );
            Ok(())
        }
    }
}

fn suite_line(case: &SuiteCase) -> String {
    let status = match case.status {
        SuiteStatus::Pass => "pass",
        SuiteStatus::Fail => "FAIL",
        SuiteStatus::Unsupported => "unsupported",
    };
    format!("[{status}] {} — {}", case.id, case.details)
}

fn cmd_suite(case: Option<String>, json: bool) -> Result<(), CliError> {
    let cases = match case {
        Some(id) => match run_case(&id) {
            Some(c) => vec![c],
            None => {
                return Err(CliError::usage(format!(
                    "unknown case {id:?}; known cases: {}",
                    case_ids().join(", ")
                )))
            }
        },
        None => run_suite(),
    };
    if json {
        out!("{}", suite_to_json(&cases));
    } else {
        for c in &cases {
            out!("{}", suite_line(c));
        }
    }
    if cases.iter().any(|c| c.status == SuiteStatus::Fail) {
        Err(CliError::Check("at least one suite case failed".into()))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Catalog { action } => cmd_catalog(action),
        Cmd::Validate { algebra } => cmd_validate(&algebra),
        Cmd::Verify { algebra, product } => cmd_verify(&algebra, &product),
        Cmd::Chain { algebra, product } => cmd_chain(&algebra, &product),
        Cmd::Classify { algebra, method } => cmd_classify(&algebra, method),
        Cmd::Decompose { algebra, phi } => cmd_decompose(&algebra, &phi),
        Cmd::Construct { recipe } => cmd_construct(recipe),
        Cmd::Suite { case, json } => cmd_suite(case, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
