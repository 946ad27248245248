//! Subcommands. Each returns its report as text and JSON plus an exit code;
//! errors map to codes 2 (input) and 3 (engine inconsistency).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qsp_core::barcheck::{self, bar_exists, canonical_params, BarError};
use qsp_core::cartan::{enumerate_admissible, AdmissiblePair, CartanDatum, PairError, Violation};
use qsp_core::qsp::{c_oracle, closed_form, Presentation, QspContext, QspParams};
use qsp_core::uqg::Algebra;
use qsp_core::Scalar;

use crate::error::CliError;
use crate::input::{self, load_cartan, read_json, PairSpec};
use crate::suites::{run_suite, SUITES};

#[derive(Debug, Parser)]
#[command(name = "qsp", version, about = "Quantum symmetric pair computations and checks")]
pub struct Cli {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest number of word evaluations in one zero test.
    #[arg(long, global = true, default_value_t = qsp_core::uqg::DEFAULT_MAX_BUCKET)]
    pub max_bucket: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Cartan datum: a JSON file or a name such as `A3` or `affine:A1`.
    #[arg(long)]
    pub cartan: Option<String>,
    /// JSON file with `X` and `tau`.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    /// JSON file with Cartan datum, pair and parameters `c`, `s`.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    #[value(name = "Zi")]
    Zi,
    #[value(name = "Wij")]
    Wij,
    #[value(name = "Bi")]
    Bi,
    #[value(name = "Cij-closed")]
    CijClosed,
    #[value(name = "Cij-oracle")]
    CijOracle,
    /// `Cij-oracle` minus `Cij-closed`.
    #[value(name = "diff")]
    Diff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresentationArg {
    Standard,
    Unified,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks whether `(X, tau)` is admissible.
    ValidatePair(ProblemArgs),
    /// Prints `Z_i`, `W_ij`, `B_i` or a right-hand side `C_ij`.
    Compute {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        what: What,
        /// Node label `i`.
        #[arg(long)]
        i: i64,
        /// Node label `j`.
        #[arg(long)]
        j: Option<i64>,
        #[arg(long, value_enum, default_value = "standard")]
        presentation: PresentationArg,
    },
    /// Decides whether `B_{c,s}` has a bar involution fixing every `B_i`.
    BarExists(ProblemArgs),
    /// Prints parameters in `D^(1/2)` for a pair.
    Canonical(ProblemArgs),
    /// Tabulates the signs `nu_i` over all admissible pairs.
    NuAtlas {
        /// Families such as `A`, `G` or `affine:A`; defaults to all finite families.
        #[arg(long = "family")]
        families: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

/// Text for stdout, the JSON report and the exit code.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

fn outcome<T: Serialize>(text: String, report: &T, code: i32) -> Result<Outcome, CliError> {
    let json = serde_json::to_value(report).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Outcome { text, json, code })
}

/// Executes a parsed command line and writes `--out` if given.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let outcome = if cli.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| CliError::Input(e.to_string()))?;
        pool.install(|| dispatch(cli))?
    } else {
        dispatch(cli)?
    };
    if let Some(path) = &cli.out {
        write_report(path, &outcome.json)?;
    }
    Ok(outcome)
}

pub fn write_report(path: &Path, json: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(json).map_err(|e| CliError::Input(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::ValidatePair(p) => validate_pair(p),
        Command::Compute {
            problem,
            what,
            i,
            j,
            presentation,
        } => compute(problem, *what, *i, *j, *presentation, cli.max_bucket),
        Command::BarExists(p) => bar(p, cli.max_bucket),
        Command::Canonical(p) => canonical(p, cli.max_bucket),
        Command::NuAtlas { families, max_rank } => nu_atlas(families, *max_rank, cli.max_bucket),
        Command::Verify { suite } => verify(suite, cli.seed, cli.max_bucket),
    }
}

#[derive(Serialize)]
struct ViolationReport {
    condition: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ValidateReport {
    pair: PairSpec,
    valid: bool,
    violations: Vec<ViolationReport>,
}

fn condition(v: &Violation) -> &'static str {
    match v {
        Violation::NotPermutation | Violation::NotInvolution { .. } => "involution",
        Violation::NotDiagramAutomorphism { .. } => "diagram-automorphism",
        Violation::NotStable { .. } => "x-stable",
        Violation::NotFiniteType => "finite-type",
        Violation::LongestElementAction { .. } => "longest-element-action",
        Violation::CorootIntegrality { .. } => "coroot-integrality",
    }
}

fn pair_spec(p: &ProblemArgs) -> Result<(CartanDatum, PairSpec), CliError> {
    if let Some(path) = &p.params {
        let spec: input::ParamsSpec = read_json(path)?;
        return Ok((spec.cartan.build()?, spec.pair));
    }
    let cartan = p
        .cartan
        .as_deref()
        .ok_or_else(|| CliError::Input("either --params or --cartan is required".into()))?;
    let pair = match &p.pair {
        Some(path) => read_json(path)?,
        None => PairSpec::default(),
    };
    Ok((load_cartan(cartan)?, pair))
}

fn validate_pair(p: &ProblemArgs) -> Result<Outcome, CliError> {
    let (datum, spec) = pair_spec(p)?;
    let tau: Vec<(i64, i64)> = spec.tau.iter().map(|t| (t[0], t[1])).collect();
    let (valid, violations) = match AdmissiblePair::from_labels(Arc::new(datum), &spec.x, &tau) {
        Ok(_) => (true, Vec::new()),
        Err(PairError::Invalid(v)) => (false, v),
        Err(e) => return Err(e.into()),
    };
    let report = ValidateReport {
        pair: spec,
        valid,
        violations: violations
            .iter()
            .map(|v| ViolationReport {
                condition: condition(v),
                message: v.to_string(),
            })
            .collect(),
    };
    let mut text = if valid { "valid\n".to_string() } else { "invalid\n".to_string() };
    for v in &report.violations {
        text.push_str(&format!("  {}: {}\n", v.condition, v.message));
    }
    outcome(text, &report, if valid { 0 } else { 1 })
}

/// The problem's parameters, or canonical ones with `s = 0` when none are given.
fn params_or_canonical(problem: input::Problem) -> Result<QspParams, CliError> {
    match problem.params {
        Some(p) => Ok(p),
        None => {
            let ctx = problem.ctx;
            let c = canonical_params(ctx.pair());
            let n = c.len();
            Ok(QspParams::new(ctx, c, vec![Scalar::zero(); n])?)
        }
    }
}

fn load(p: &ProblemArgs, max_bucket: usize) -> Result<input::Problem, CliError> {
    input::load_problem(p.params.as_deref(), p.cartan.as_deref(), p.pair.as_deref(), max_bucket)
}

#[derive(Serialize)]
struct ComputeReport {
    what: String,
    i: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<String>,
    element: String,
    is_zero: bool,
}

fn compute(
    p: &ProblemArgs,
    what: What,
    i_label: i64,
    j_label: Option<i64>,
    presentation: PresentationArg,
    max_bucket: usize,
) -> Result<Outcome, CliError> {
    let problem = load(p, max_bucket)?;
    let ctx: Arc<QspContext> = problem.ctx.clone();
    let datum = ctx.pair().datum();
    let i = datum.index_of(i_label)?;
    let j = match j_label {
        Some(l) => Some(datum.index_of(l)?),
        None => None,
    };
    let need_j = || j.ok_or_else(|| CliError::Input(format!("--j is required for {what:?}")));
    let pres = match presentation {
        PresentationArg::Standard => Presentation::Standard,
        PresentationArg::Unified => Presentation::Unified,
    };
    let uses_presentation = matches!(what, What::CijClosed | What::Diff);
    let element = match what {
        What::Zi => ctx.z(i)?.clone(),
        What::Wij => ctx.w(i, need_j()?)?,
        What::Bi => params_or_canonical(problem)?.b(i).clone(),
        What::CijClosed => {
            let params = params_or_canonical(problem)?;
            closed_form(&params, i, need_j()?, pres)?.evaluate(&params)
        }
        What::CijOracle => c_oracle(&params_or_canonical(problem)?, i, need_j()?)?,
        What::Diff => {
            let params = params_or_canonical(problem)?;
            let j = need_j()?;
            c_oracle(&params, i, j)? - closed_form(&params, i, j, pres)?.evaluate(&params)
        }
    };
    let alg = ctx.algebra();
    let is_zero = alg.is_zero(&element)?;
    let printed = alg.format(&element);
    let text = if what == What::Diff {
        format!("{printed} (is_zero: {is_zero})\n")
    } else {
        format!("{printed}\n")
    };
    let report = ComputeReport {
        what: what.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        i: i_label,
        j: j_label,
        presentation: uses_presentation.then(|| format!("{presentation:?}").to_lowercase()),
        element: printed,
        is_zero,
    };
    outcome(text, &report, 0)
}

fn bar_text(report: &barcheck::BarReport) -> String {
    let mut text = String::new();
    for (l, nu) in &report.nu {
        text.push_str(&format!("  node {l}: nu = {nu:+}, ell = {}", report.ell[l]));
        if let Some(ok) = report.oc_z.get(l) {
            text.push_str(&format!(", condition {}", if *ok { "holds" } else { "fails" }));
        }
        text.push('\n');
    }
    text.push_str(if report.exists() { "verdict: exists\n" } else { "verdict: fails\n" });
    text
}

fn bar(p: &ProblemArgs, max_bucket: usize) -> Result<Outcome, CliError> {
    let params = params_or_canonical(load(p, max_bucket)?)?;
    let report = bar_exists(&params)?;
    outcome(bar_text(&report), &report, if report.exists() { 0 } else { 1 })
}

#[derive(Serialize)]
struct CanonicalReport {
    pair: PairSpec,
    c: BTreeMap<i64, Scalar>,
    #[serde(flatten)]
    bar: barcheck::BarReport,
}

fn canonical(p: &ProblemArgs, max_bucket: usize) -> Result<Outcome, CliError> {
    let problem = load(p, max_bucket)?;
    let ctx = problem.ctx.clone();
    let pair = ctx.pair();
    let d = canonical_params(pair);
    let params = QspParams::new(ctx.clone(), d.clone(), vec![Scalar::zero(); pair.rank()])?;
    let report = bar_exists(&params)?;
    let c: BTreeMap<i64, Scalar> = pair
        .outside_x()
        .into_iter()
        .map(|i| (pair.datum().label(i), d[i].clone()))
        .collect();
    let listed: Vec<String> = c.values().map(|v| v.to_string()).collect();
    let text = format!("c = ({})\n{}", listed.join(", "), bar_text(&report));
    let code = if report.exists() { 0 } else { 1 };
    let report = CanonicalReport {
        pair: PairSpec::of(pair),
        c,
        bar: report,
    };
    outcome(text, &report, code)
}

#[derive(Serialize)]
struct AtlasRow {
    cartan: String,
    pair: String,
    /// Sign per node label; `null` where the sign could not be computed.
    nu: BTreeMap<i64, Option<i8>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

#[derive(Serialize)]
struct AtlasReport {
    rows: Vec<AtlasRow>,
    all_positive: bool,
}

fn family_data(families: &[String], max_rank: usize) -> Result<Vec<CartanDatum>, CliError> {
    let names: Vec<String> = if families.is_empty() {
        ["A", "B", "C", "D", "E", "F", "G"].iter().map(|s| s.to_string()).collect()
    } else {
        families.to_vec()
    };
    let mut out = Vec::new();
    for name in &names {
        let (affine, kind) = match name.strip_prefix("affine:") {
            Some(k) => (true, k),
            None => (false, name.as_str()),
        };
        let mut found = false;
        for rank in 1..=max_rank {
            let d = if affine {
                CartanDatum::affine(kind, rank)
            } else {
                CartanDatum::finite(kind, rank)
            };
            if let Ok(d) = d {
                found = true;
                out.push(d);
            }
        }
        if !found && !families.is_empty() {
            return Err(CliError::Input(format!("no datum of family {name} with rank <= {max_rank}")));
        }
    }
    Ok(out)
}

fn nu_atlas(families: &[String], max_rank: usize, max_bucket: usize) -> Result<Outcome, CliError> {
    use rayon::prelude::*;
    let mut jobs: Vec<(String, Arc<Algebra>, AdmissiblePair)> = Vec::new();
    for d in family_data(families, max_rank)? {
        let name = d.name().unwrap_or("custom").to_string();
        let alg = Arc::new(Algebra::with_max_bucket(Arc::new(d), max_bucket));
        for p in enumerate_admissible(alg.datum_arc().clone())? {
            jobs.push((name.clone(), alg.clone(), p));
        }
    }
    let rows: Vec<Result<AtlasRow, CliError>> = jobs
        .par_iter()
        .map(|(name, alg, pair)| {
            let ctx = QspContext::with_algebra(alg.clone(), Arc::new(pair.clone()))?;
            let mut row = AtlasRow {
                cartan: name.clone(),
                pair: pair.to_string(),
                nu: BTreeMap::new(),
                errors: Vec::new(),
            };
            for i in pair.outside_x() {
                let l = pair.datum().label(i);
                match barcheck::nu_sign(&ctx, i) {
                    Ok(v) => {
                        row.nu.insert(l, Some(v));
                    }
                    Err(e @ BarError::SignInconsistent(_)) => return Err(e.into()),
                    Err(e) => {
                        row.nu.insert(l, None);
                        row.errors.push(format!("node {l}: {e}"));
                    }
                }
            }
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let all_positive = rows.iter().all(|r| r.nu.values().all(|v| *v == Some(1)));
    let mut text = String::new();
    for r in &rows {
        let signs: Vec<String> = r
            .nu
            .iter()
            .map(|(l, v)| match v {
                Some(v) => format!("{l}:{v:+}"),
                None => format!("{l}:?"),
            })
            .collect();
        text.push_str(&format!("{:<10} {:<32} nu {}\n", r.cartan, r.pair, signs.join(" ")));
    }
    text.push_str(&format!(
        "{} pairs, {}\n",
        rows.len(),
        if all_positive { "all nu = +1" } else { "some nu != +1" }
    ));
    outcome(text, &AtlasReport { rows, all_positive }, 0)
}

fn verify(suite: &str, seed: u64, max_bucket: usize) -> Result<Outcome, CliError> {
    if !SUITES.contains(&suite) {
        return Err(CliError::Input(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let report = run_suite(suite, seed, max_bucket)?;
    let code = if report.passed { 0 } else { 1 };
    outcome(report.summary(), &report, code)
}
