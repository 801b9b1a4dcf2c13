//! `flatres`: decide, build and verify residue realizations from JSON documents.
//!
//! Exit status is 0 for a positive answer, 1 for a negative one and 2 for
//! usage or validation errors.

mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use flatres::graphs::{connection_graph_exists, find_cylinder_config, Quantifier, SearchBudget, SearchOutcome};
use flatres::surfaces::{build_witness_with_budget, render_svg};
use flatres::{
    decide_cylinder_tuple, decide_realizable, enumerate_excluded_rays, primitive_tuples, verify_certificate,
    build_witness_with_rotation, CylinderOutcome, ResidueTuple, StratumSignature, WitnessError,
};

use docs::*;

#[derive(Parser)]
#[command(name = "flatres", version, about = "Residues of meromorphic Abelian differentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form verdict for a stratum and residue tuple.
    Decide {
        /// Request document: a path, `-` for stdin, or inline JSON.
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build and self-check a construction certificate.
    Witness {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw the base surfaces to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Ask for a genus-one base with this rotation number.
        #[arg(long)]
        rotation: Option<u32>,
        #[arg(long, default_value_t = SearchBudget::default().max_configurations)]
        budget: u64,
    },
    /// Recompute a witness document's invariants and compare them with its claims.
    Verify {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Excluded primitive rays for single-zero strata with simple poles.
    Table {
        #[arg(long, default_value_t = 2)]
        s_min: usize,
        #[arg(long, default_value_t = 6)]
        s_max: usize,
        /// Largest zero order; defaults to s - 2 for each row.
        #[arg(long)]
        max_zero: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the closed form with the connection-graph search over a sweep.
    OracleCheck {
        #[arg(long, default_value_t = 7)]
        max_s: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Mode::Universal)]
        mode: Mode,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether cylinders with given circumferences fit in a holomorphic stratum.
    Cylinders {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = SearchBudget::default().max_configurations)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Universal,
    Existential,
}

impl From<Mode> for Quantifier {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Universal => Quantifier::Universal,
            Mode::Existential => Quantifier::Existential,
        }
    }
}

/// Positive or negative answer; errors become exit status 2.
type Answer = Result<bool>;

fn decide(input: &str, output: Option<PathBuf>) -> Answer {
    let req: ResidueRequest = parse(&read_source(input)?)?;
    let verdict = decide_realizable(&req.stratum, &req.residues)?;
    let ok = verdict.realizable;
    let doc = VerdictDoc { format_version: FORMAT_VERSION, stratum: req.stratum, residues: req.residues, verdict };
    emit(output.as_deref(), &to_json(&doc)?)?;
    Ok(ok)
}

fn refusal(stratum: StratumSignature, residues: ResidueTuple, reason: &str, output: Option<PathBuf>) -> Answer {
    let doc = RefusalDoc { format_version: FORMAT_VERSION, stratum, residues, realizable: false, reason: reason.to_string() };
    emit(output.as_deref(), &to_json(&doc)?)?;
    Ok(false)
}

fn witness(input: &str, output: Option<PathBuf>, svg_path: Option<PathBuf>, rotation: Option<u32>, budget: u64) -> Answer {
    let req: ResidueRequest = parse(&read_source(input)?)?;
    let budget = SearchBudget { max_configurations: budget };
    let built = match rotation {
        Some(rot) => build_witness_with_rotation(&req.stratum, &req.residues, rot),
        None => build_witness_with_budget(&req.stratum, &req.residues, budget),
    };
    let certificate = match built {
        Ok(c) => c,
        Err(WitnessError::NotRealizable(reason)) => return refusal(req.stratum, req.residues, reason.as_str(), output),
        Err(e @ WitnessError::NoFamilyForRotation(_)) => {
            return refusal(req.stratum, req.residues, &e.to_string(), output)
        }
        Err(WitnessError::Decide(e)) => return Err(e.into()),
        Err(e) => return Err(anyhow::anyhow!("internal: {e}")),
    };
    if let Some(path) = svg_path {
        write_atomic(&path, &render_svg(&certificate))?;
    }
    let doc = WitnessDoc { format_version: FORMAT_VERSION, stratum: req.stratum, residues: req.residues, certificate };
    emit(output.as_deref(), &to_json(&doc)?)?;
    Ok(true)
}

fn verify(input: &str, output: Option<PathBuf>, svg_path: Option<PathBuf>) -> Answer {
    let doc: WitnessDoc = parse(&read_source(input)?)?;
    if let Some(path) = svg_path {
        write_atomic(&path, &render_svg(&doc.certificate))?;
    }
    let outcome = verify_certificate(&doc.certificate).map_err(|e| e.to_string()).and_then(|profile| {
        if profile.matches(&doc.stratum, &doc.residues) {
            Ok(profile)
        } else {
            Err(format!("certificate verifies to {profile:?}, which is not the stated stratum and residues"))
        }
    });
    let (ok, report) = match outcome {
        Ok(profile) => (
            true,
            VerifyDoc { format_version: FORMAT_VERSION, status: VerifyStatus::Verified, profile: Some(profile), violation: None },
        ),
        Err(msg) => (
            false,
            VerifyDoc { format_version: FORMAT_VERSION, status: VerifyStatus::Violation, profile: None, violation: Some(msg) },
        ),
    };
    emit(output.as_deref(), &to_json(&report)?)?;
    Ok(ok)
}

fn table(s_min: usize, s_max: usize, max_zero: Option<u32>, output: Option<PathBuf>) -> Answer {
    anyhow::ensure!(s_min >= 2 && s_min <= s_max, "need 2 <= s-min <= s-max");
    let rows = (s_min..=s_max)
        .map(|s| {
            let m = max_zero.unwrap_or(s as u32 - 2);
            let rays: Vec<Vec<i64>> = if m == 0 { Vec::new() } else { enumerate_excluded_rays(s, m).into_iter().map(|r| r.integers).collect() };
            TableRow { s, max_zero: m, count: rays.len(), rays }
        })
        .collect();
    emit(output.as_deref(), &to_json(&TableDoc { format_version: FORMAT_VERSION, rows })?)?;
    Ok(true)
}

fn oracle_check(max_s: usize, bound: i64, mode: Mode, output: Option<PathBuf>) -> Answer {
    anyhow::ensure!((2..=10).contains(&max_s), "max-s must lie in 2..=10");
    anyhow::ensure!(bound >= 1, "bound must be positive");
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for s in 2..=max_s {
        let sig = StratumSignature::new(0, if s > 2 { vec![s as u32 - 2] } else { vec![] }, vec![], s as u32);
        for t in primitive_tuples(s, bound) {
            let decide = decide_realizable(&sig, &ResidueTuple::from_ints(&t))?.realizable;
            let graph = connection_graph_exists(&t, mode.into());
            if decide != graph {
                disagreements.push(Disagreement { integers: t, decide, graph });
            }
            checked += 1;
        }
    }
    let agree = checked - disagreements.len();
    let pct = if checked == 0 { 100.0 } else { 100.0 * agree as f64 / checked as f64 };
    let ok = disagreements.is_empty();
    let doc = OracleDoc {
        format_version: FORMAT_VERSION,
        max_s,
        bound,
        mode: mode.into(),
        checked,
        agreement: format!("{pct:.0}%"),
        disagreements,
    };
    emit(output.as_deref(), &to_json(&doc)?)?;
    Ok(ok)
}

fn cylinders(input: &str, output: Option<PathBuf>, budget: u64) -> Answer {
    let req: CylinderRequest = parse(&read_source(input)?)?;
    let lambda = req.tuple();
    let mut doc = CylinderDoc {
        format_version: FORMAT_VERSION,
        stratum: req.stratum.clone(),
        circumferences: req.circumferences.clone(),
        status: CylinderStatus::Inconclusive,
        verdict: None,
        configuration: None,
        ray: None,
    };
    let ok = match decide_cylinder_tuple(&req.stratum, &lambda)? {
        CylinderOutcome::Decided(v) => {
            doc.status = if v.realizable { CylinderStatus::Realizable } else { CylinderStatus::NotRealizable };
            let ok = v.realizable;
            doc.ray = v.ray.clone();
            doc.verdict = Some(v);
            ok
        }
        CylinderOutcome::NeedsSearch => {
            match find_cylinder_config(&req.stratum, &lambda, SearchBudget { max_configurations: budget })? {
                SearchOutcome::Found(c) => {
                    doc.status = CylinderStatus::Realizable;
                    doc.configuration = Some(c);
                    true
                }
                SearchOutcome::NotFound => {
                    doc.status = CylinderStatus::NotRealizable;
                    false
                }
                SearchOutcome::BudgetExceeded => {
                    emit(output.as_deref(), &to_json(&doc)?)?;
                    anyhow::bail!("search budget exhausted; the answer is inconclusive");
                }
            }
        }
    };
    emit(output.as_deref(), &to_json(&doc)?)?;
    Ok(ok)
}

fn run(cli: Cli) -> Answer {
    match cli.command {
        Command::Decide { input, output } => decide(&input, output),
        Command::Witness { input, output, svg, rotation, budget } => witness(&input, output, svg, rotation, budget),
        Command::Verify { input, output, svg } => verify(&input, output, svg),
        Command::Table { s_min, s_max, max_zero, output } => table(s_min, s_max, max_zero, output),
        Command::OracleCheck { max_s, bound, mode, output } => oracle_check(max_s, bound, mode, output),
        Command::Cylinders { input, output, budget } => cylinders(&input, output, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
