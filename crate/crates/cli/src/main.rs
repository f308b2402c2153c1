//! Batch front end: validate posets, decompose and classify involutions given
//! as JSON files, and run the finite-field oracle.
//!
//! Exit codes: 0 pass, 1 negative verdict or failed check, 2 input error,
//! 3 budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use incidence_involutions::algebra::{h1_trivial, non_coboundary_cocycle, IncidenceAlgebra};
use incidence_involutions::classify::{equivalent, inner_equivalent, ClassifyError};
use incidence_involutions::field::{FieldDescriptor, GaussianRationals, Gfp2, InvolutiveField};
use incidence_involutions::involution::{decompose, is_involution, InvolutionError};
use incidence_involutions::io::{
    decomposition_json, lambda_decomposition_json, map_to_labels, parse_field_flag, parse_json, read_poset,
    report_json, ElementFile, InvolutionFile, IoError,
};
use incidence_involutions::oracle::{verify_theorems, EnumerationBudget, OracleError, TheoremStatus};
use incidence_involutions::poset::{enumerate_involutions, lambda_decomposition, FinitePoset};

/// Seed for the randomised parts of the oracle, fixed for reproducibility.
const ORACLE_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "fi-involutions", version, about = "Involutions of the second kind on incidence algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Base field: `qi` for Q(i) or `gf:p` for GF(p²); overrides any field in the input files.
    #[arg(long, value_name = "qi|gf:p")]
    field: Option<String>,
    /// Cap on the number of units any single oracle sweep may visit.
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connectedness, center dimension, H¹ verdict and poset involutions of a poset file.
    Validate {
        poset: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Factor an involution file as Ψ_{f⁻¹}∘M_σ∘ρ_λ^*.
    Decompose {
        rho: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether two involution files are equivalent.
    Classify {
        rho1: PathBuf,
        rho2: PathBuf,
        /// Only allow inner automorphisms as conjugators.
        #[arg(long)]
        inner_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run every oracle check on a poset over a finite field (default gf:3).
    Oracle {
        poset: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A report and whether it is a positive outcome.
struct Outcome {
    report: Value,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Validate { common, .. }
        | Command::Decompose { common, .. }
        | Command::Classify { common, .. }
        | Command::Oracle { common, .. } => common,
    };
    let result = run(&cli.command, common).and_then(|outcome| {
        let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialise") + "\n";
        if let Some(path) = &common.json {
            std::fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        print!("{text}");
        Ok(outcome.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

macro_rules! with_field {
    ($descriptor:expr, $field:ident => $body:expr) => {
        match $descriptor {
            FieldDescriptor::GaussianRational => {
                let $field = GaussianRationals;
                $body
            }
            FieldDescriptor::GfP2 { p } => {
                let $field = Gfp2::new(p).map_err(|e| Failure::Input(e.to_string()))?;
                $body
            }
        }
    };
}

fn run(command: &Command, common: &Common) -> Result<Outcome, Failure> {
    let flag = common.field.as_deref().map(parse_field_flag).transpose()?;
    match command {
        Command::Validate { poset, .. } => {
            let poset = read_poset(&read(poset)?)?;
            with_field!(flag.unwrap_or(FieldDescriptor::GaussianRational), field => validate(poset, field))
        }
        Command::Decompose { rho, .. } => {
            let file: InvolutionFile = parse_json(&read(rho)?)?;
            let descriptor = flag.or(file.field).unwrap_or(FieldDescriptor::GaussianRational);
            with_field!(descriptor, field => decompose_file(&file, field))
        }
        Command::Classify { rho1, rho2, inner_only, .. } => {
            let first: InvolutionFile = parse_json(&read(rho1)?)?;
            let second: InvolutionFile = parse_json(&read(rho2)?)?;
            let descriptor = match (flag, first.field, second.field) {
                (Some(d), _, _) => d,
                (None, Some(a), Some(b)) if a != b => {
                    return Err(Failure::Input(format!("the files name different fields ({a} and {b})")))
                }
                (None, a, b) => a.or(b).unwrap_or(FieldDescriptor::GaussianRational),
            };
            with_field!(descriptor, field => classify(&first, &second, *inner_only, field))
        }
        Command::Oracle { poset, .. } => {
            let poset = read_poset(&read(poset)?)?;
            let mut budget = EnumerationBudget::default();
            if let Some(n) = common.budget {
                budget.max_units = n;
            }
            with_field!(flag.unwrap_or(FieldDescriptor::GfP2 { p: 3 }), field => oracle(poset, field, &budget))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn validate<F: InvolutiveField>(poset: FinitePoset, field: F) -> Result<Outcome, Failure> {
    let descriptor = field.descriptor();
    let connected = poset.is_connected();
    let components: Vec<Vec<String>> =
        poset.components().into_iter().map(|c| c.into_iter().map(|x| poset.label(x).to_string()).collect()).collect();
    let involutions: Vec<Value> = enumerate_involutions(&poset)
        .iter()
        .map(|lambda| {
            let sides = lambda_decomposition(&poset, lambda)
                .map(|d| lambda_decomposition_json(&poset, &d))
                .unwrap_or_else(|e| json!({"error": e.to_string()}));
            json!({"lambda": map_to_labels(&poset, lambda), "decomposition": sides})
        })
        .collect();
    let alg = IncidenceAlgebra::new(poset, field);
    let mut warnings = Vec::new();
    let h1 = if connected {
        let report = h1_trivial(alg.poset(), alg.field()).map_err(|e| Failure::Input(e.to_string()))?;
        let mut h1 = json!({
            "trivial": report.trivial,
            "free_rank": report.presentation.free_rank,
            "torsion": report.presentation.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "order": report.order.map(|o| o.to_string()),
        });
        if !report.trivial {
            warnings.push("H¹(X, K^×) is nontrivial: multiplicative automorphisms need not be inner".to_string());
            if let Some(sigma) = non_coboundary_cocycle(&alg) {
                h1["non_coboundary_cocycle"] = json!(ElementFile::from_cocycle(&alg, &sigma));
            }
        }
        h1
    } else {
        warnings.push(format!("poset is disconnected ({} components)", components.len()));
        Value::Null
    };
    Ok(Outcome {
        report: json!({
            "field": descriptor.to_string(),
            "elements": alg.poset().len(),
            "connected": connected,
            "components": components,
            "center_dimension": alg.center_dimension(),
            "h1": h1,
            "involutions": involutions,
            "warnings": warnings,
        }),
        pass: true,
    })
}

fn decompose_file<F: InvolutiveField>(file: &InvolutionFile, field: F) -> Result<Outcome, Failure> {
    let alg = IncidenceAlgebra::new(file.poset.build()?, field);
    let rho = file.build(&alg)?;
    let failure = |message: String| Outcome { report: json!({"status": "failure", "error": message}), pass: false };
    if let Err(defect) = is_involution(&alg, &rho) {
        return Ok(failure(format!("not an involution: {defect}")));
    }
    match decompose(&alg, &rho) {
        Ok(d) => {
            let mut report = decomposition_json(&alg, &d);
            report["status"] = json!("ok");
            report["field"] = json!(alg.field().descriptor().to_string());
            Ok(Outcome { report, pass: true })
        }
        Err(e @ (InvolutionError::DecompositionFailure(_) | InvolutionError::NotSecondKind)) => {
            Ok(failure(e.to_string()))
        }
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn classify<F: InvolutiveField>(
    first: &InvolutionFile,
    second: &InvolutionFile,
    inner_only: bool,
    field: F,
) -> Result<Outcome, Failure> {
    let poset = first.poset.build()?;
    if second.poset.build()? != poset {
        return Err(Failure::Input("the two involutions live on different posets".into()));
    }
    let alg = IncidenceAlgebra::new(poset, field);
    let rho1 = first.build(&alg)?;
    let rho2 = second.build(&alg)?;
    for (name, rho) in [("first", &rho1), ("second", &rho2)] {
        is_involution(&alg, rho).map_err(|d| Failure::Input(format!("{name} map is not an involution: {d}")))?;
    }
    let report = if inner_only { inner_equivalent(&alg, &rho1, &rho2) } else { equivalent(&alg, &rho1, &rho2) };
    match report {
        Ok(report) => Ok(Outcome { pass: report.is_equivalent(), report: report_json(&alg, &report) }),
        Err(e @ ClassifyError::WitnessCheckFailed(_)) => panic!("{e}"),
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn oracle<F: InvolutiveField>(poset: FinitePoset, field: F, budget: &EnumerationBudget) -> Result<Outcome, Failure> {
    let instance = format!("{} elements over {}", poset.len(), field.descriptor());
    let alg = IncidenceAlgebra::new(poset, field);
    let records = verify_theorems(&alg, &instance, budget, ORACLE_SEED).map_err(|e| match e {
        OracleError::BudgetExceeded(m) => Failure::Budget(m),
        other => Failure::Input(other.to_string()),
    })?;
    let count = |s: TheoremStatus| records.iter().filter(|r| r.status == s).count();
    let failed = count(TheoremStatus::Fail);
    Ok(Outcome {
        report: json!({
            "instance": instance,
            "passed": count(TheoremStatus::Pass),
            "failed": failed,
            "skipped": count(TheoremStatus::Skipped),
            "records": records,
        }),
        pass: failed == 0,
    })
}
