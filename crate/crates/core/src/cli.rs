//! Command-line front end. Every command prints one JSON document on stdout
//! (or to `--output`); tables and diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{self, Input};
use crate::join::{
    hjoin_explicit, oracle_max, random_spec, verify_with, JoinAnalysis, JoinSpec, VerifyOptions,
};
use crate::lexpow::{lex_power_explicit, lex_power_regular};
use crate::main_spectrum::walk_data;
use crate::spectral::{matching_distance, sym_eigen, sym_eigenvalues};
use crate::Tolerances;

#[derive(Debug, Parser)]
#[command(name = "hjoin", version, about = "Spectra of H-joins of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct InputArgs {
    /// JSON spec, JSON graph object or edge-list file
    #[arg(long, value_name = "PATH", conflicts_with = "inline")]
    pub input: Option<PathBuf>,
    /// Generator string or inline spec such as 'P3[K1,3;K2;P3]'
    #[arg(long, value_name = "STR")]
    pub inline: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Eigenvalue grouping tolerance (relative to the spectral radius)
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// Also check the result against the explicitly built join
    #[arg(long)]
    pub oracle: bool,
    /// Write the JSON document here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum of the join with multiplicities and origins
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact characteristic polynomial det(xI - A)
    Charpoly {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Main characteristic polynomial of a graph (or of each component)
    Mainpoly {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Walk matrix and walk counts of a graph (or of each component)
    Walkmatrix {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The associated integer matrix of a join
    Assoc {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// A full eigenvector basis of the join
    Eigvecs {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Spectrum of the k-th lexicographic power of a regular connected graph
    Lexpow {
        k: u32,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the formula path with the explicit join on random specs
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Perturb the associated matrix (negative control)
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Time the formula path against the dense oracle
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Host is C_p (K_p for p < 3)
        #[arg(long, default_value_t = 8)]
        p: usize,
        /// Order of each random component
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
}

/// Outcome of a command: the JSON document plus the exit code.
pub struct Outcome {
    pub doc: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, code: 0 }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_)
        | Error::ComplexEigenvalue { .. }
        | Error::Solve(_)
        | Error::NotDivisible => 1,
        _ => 2,
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let output = common(&cli.command).output.clone();
    match execute(&cli.command) {
        Ok(out) => match emit(&out.doc, output.as_ref()) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn common(c: &Command) -> &CommonArgs {
    match c {
        Command::Spectrum { common, .. }
        | Command::Charpoly { common, .. }
        | Command::Mainpoly { common, .. }
        | Command::Walkmatrix { common, .. }
        | Command::Assoc { common, .. }
        | Command::Eigvecs { common, .. }
        | Command::Lexpow { common, .. }
        | Command::Verify { common, .. }
        | Command::Bench { common, .. } => common,
    }
}

fn emit(doc: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    match output {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn tolerances(c: &CommonArgs) -> Result<Tolerances> {
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Error::Invalid(format!(
            "--tol must be positive, got {}",
            c.tol
        )));
    }
    Ok(Tolerances {
        group: c.tol,
        ..Tolerances::default()
    })
}

pub fn load_input(a: &InputArgs) -> Result<Input> {
    match (&a.input, &a.inline) {
        (Some(p), None) => io::parse_document(&std::fs::read_to_string(p)?),
        (None, Some(s)) => io::parse_inline(s),
        _ => Err(Error::Invalid(
            "exactly one of --input or --inline is required".into(),
        )),
    }
}

fn oracle_check(spec: &JoinSpec, tol: &Tolerances) -> Result<bool> {
    let r = verify_with(spec, tol, VerifyOptions::default())?;
    for c in &r.checks {
        eprintln!(
            "oracle {:<13} {} {}",
            c.name,
            if c.passed { "ok  " } else { "FAIL" },
            c.detail
        );
    }
    Ok(r.passed())
}

fn with_oracle(doc: Value, spec: &JoinSpec, c: &CommonArgs, tol: &Tolerances) -> Result<Outcome> {
    let code = if c.oracle && !oracle_check(spec, tol)? {
        1
    } else {
        0
    };
    Ok(Outcome { doc, code })
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Spectrum { input, common } => {
            let tol = tolerances(common)?;
            let spec = load_input(input)?.into_spec()?;
            let s = JoinAnalysis::new(&spec, &tol)?.spectrum(&tol)?;
            with_oracle(io::spectrum_to_json(&s), &spec, common, &tol)
        }
        Command::Charpoly { input, common } => {
            let tol = tolerances(common)?;
            let spec = load_input(input)?.into_spec()?;
            let p = crate::join::hjoin_charpoly(&spec)?;
            with_oracle(io::poly_to_json(&p), &spec, common, &tol)
        }
        Command::Mainpoly { input, .. } => {
            per_graph(input, |g| Ok(io::poly_to_json(&walk_data(g)?.main_poly())))
        }
        Command::Walkmatrix { input, .. } => {
            per_graph(input, |g| Ok(io::walk_data_to_json(&walk_data(g)?)))
        }
        Command::Assoc { input, common } => {
            let tol = tolerances(common)?;
            let spec = load_input(input)?.into_spec()?;
            let w = crate::join::assoc_matrix(&spec)?;
            with_oracle(io::assoc_to_json(&w), &spec, common, &tol)
        }
        Command::Eigvecs { input, common } => {
            let tol = tolerances(common)?;
            let spec = load_input(input)?.into_spec()?;
            let b = JoinAnalysis::new(&spec, &tol)?.eigvecs(&tol)?;
            with_oracle(io::eigvecs_to_json(&b), &spec, common, &tol)
        }
        Command::Lexpow { k, input, common } => {
            let base = load_input(input)?.into_graph();
            let s = lex_power_regular(&base, *k)?;
            let doc = io::power_spectrum_to_json(&base, &s);
            let mut code = 0;
            if common.oracle {
                let n = num_bigint::BigUint::from(base.order()).pow(*k);
                if n > oracle_max().into() {
                    return Err(Error::Invalid(format!(
                        "H^{k} has {n} vertices, above the oracle limit {}",
                        oracle_max()
                    )));
                }
                let oracle = sym_eigen(&lex_power_explicit(&base, *k)?.adjacency_f64())?.values;
                let d = matching_distance(&s.to_spectrum().expand(), &oracle);
                eprintln!("oracle matching distance {d:?}");
                let bound =
                    tolerances(common)?.group * oracle.iter().map(|v| v.abs()).fold(1.0, f64::max);
                if !d.is_some_and(|d| d <= bound) {
                    code = 1;
                }
            }
            Ok(Outcome { doc, code })
        }
        Command::Verify {
            input,
            common,
            seed,
            trials,
            corrupt,
        } => {
            let tol = tolerances(common)?;
            let opts = VerifyOptions {
                corrupt_assoc: *corrupt,
            };
            if input.input.is_some() || input.inline.is_some() {
                let spec = load_input(input)?.into_spec()?;
                let r = verify_with(&spec, &tol, opts)?;
                for c in &r.checks {
                    eprintln!(
                        "{:<13} {} {}",
                        c.name,
                        if c.passed { "ok  " } else { "FAIL" },
                        c.detail
                    );
                }
                let mut doc = io::report_to_json(&r);
                if !r.passed() {
                    doc["spec"] = io::spec_to_json(&spec);
                }
                let code = if r.passed() { 0 } else { 1 };
                return Ok(Outcome { doc, code });
            }
            let summary = verify_random(*seed, *trials, &tol, opts)?;
            let code = if summary.failed.is_empty() { 0 } else { 1 };
            Ok(Outcome {
                doc: summary.to_json(),
                code,
            })
        }
        Command::Bench {
            common,
            seed,
            p,
            n,
            density,
            runs,
        } => {
            let tol = tolerances(common)?;
            let b = bench(*p, *n, *density, *runs, *seed, &tol)?;
            b.print_table();
            Ok(Outcome::ok(b.to_json()))
        }
    }
}

fn per_graph(input: &InputArgs, f: impl Fn(&Graph) -> Result<Value>) -> Result<Outcome> {
    match load_input(input)? {
        Input::Graph(g) => Ok(Outcome::ok(f(&g)?)),
        Input::Spec(s) => {
            let docs = s.components().iter().map(f).collect::<Result<Vec<_>>>()?;
            Ok(Outcome::ok(Value::Array(docs)))
        }
    }
}

pub struct TrialResult {
    pub trial: usize,
    pub spec: JoinSpec,
    pub report: crate::join::VerificationReport,
}

pub struct VerifySummary {
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: Vec<TrialResult>,
}

impl VerifySummary {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed.iter().map(|t| {
                let mut r = io::report_to_json(&t.report);
                r["trial"] = json!(t.trial);
                r["spec"] = io::spec_to_json(&t.spec);
                r
            }).collect::<Vec<_>>(),
        })
    }
}

/// The random specs used by `verify`: `p` in `1..=5`, orders in `1..=8`.
pub fn verify_specs(seed: u64, trials: usize) -> Vec<JoinSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| random_spec(&mut rng, 5, 8)).collect()
}

pub fn verify_random(
    seed: u64,
    trials: usize,
    tol: &Tolerances,
    opts: VerifyOptions,
) -> Result<VerifySummary> {
    let specs = verify_specs(seed, trials);
    let reports = specs
        .par_iter()
        .map(|s| verify_with(s, tol, opts))
        .collect::<Result<Vec<_>>>()?;
    eprintln!(
        "{:>5} {:>5}  {:<8} {:<8} {:<8}",
        "trial", "order", "charpoly", "spectrum", "eigvecs"
    );
    let mut passed = 0;
    let mut failed = Vec::new();
    for (trial, (spec, report)) in specs.into_iter().zip(reports).enumerate() {
        let mark = |name: &str| match report.checks.iter().find(|c| c.name == name) {
            Some(c) if c.passed => "ok",
            _ => "FAIL",
        };
        eprintln!(
            "{trial:>5} {:>5}  {:<8} {:<8} {:<8}",
            report.order,
            mark("charpoly"),
            mark("spectrum"),
            mark("eigenvectors")
        );
        if report.passed() {
            passed += 1;
        } else {
            failed.push(TrialResult {
                trial,
                spec,
                report,
            });
        }
    }
    eprintln!("{passed}/{trials} passed");
    Ok(VerifySummary {
        seed,
        trials,
        passed,
        failed,
    })
}

pub struct BenchResult {
    pub p: usize,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
    pub formula_seconds: Vec<f64>,
    pub oracle_seconds: Vec<f64>,
    pub spectrum_distance: Option<f64>,
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

impl BenchResult {
    pub fn formula_median(&self) -> f64 {
        median(&self.formula_seconds)
    }

    pub fn oracle_median(&self) -> f64 {
        median(&self.oracle_seconds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "host": format!("C{}", self.p),
            "p": self.p,
            "n": self.n,
            "density": self.density,
            "seed": self.seed,
            "runs": self.formula_seconds.len(),
            "formula_seconds": self.formula_seconds,
            "oracle_seconds": self.oracle_seconds,
            "formula_median": self.formula_median(),
            "oracle_median": self.oracle_median(),
            "formula_faster": self.formula_median() < self.oracle_median(),
            "spectrum_distance": self.spectrum_distance,
        })
    }

    pub fn print_table(&self) {
        eprintln!("{:>4} {:>12} {:>12}", "run", "formula [s]", "oracle [s]");
        for (i, (f, o)) in self
            .formula_seconds
            .iter()
            .zip(&self.oracle_seconds)
            .enumerate()
        {
            eprintln!("{i:>4} {f:>12.4} {o:>12.4}");
        }
        eprintln!(
            "{:>4} {:>12.4} {:>12.4}",
            "med",
            self.formula_median(),
            self.oracle_median()
        );
    }
}

/// `C_p` (or `K_p` for `p < 3`) with `p` random components of order `n`.
pub fn bench_spec(p: usize, n: usize, density: f64, seed: u64) -> Result<JoinSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let host = if p >= 3 {
        Graph::cycle(p)?
    } else {
        Graph::complete(p)
    };
    let comps = (0..p)
        .map(|_| Graph::random_gnp(n, density, &mut rng))
        .collect();
    JoinSpec::new(host, comps)
}

pub fn bench(
    p: usize,
    n: usize,
    density: f64,
    runs: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<BenchResult> {
    if runs == 0 {
        return Err(Error::Invalid("--runs must be at least 1".into()));
    }
    let spec = bench_spec(p, n, density, seed)?;
    let mut formula_seconds = Vec::with_capacity(runs);
    let mut oracle_seconds = Vec::with_capacity(runs);
    let mut formula = Vec::new();
    let mut oracle = Vec::new();
    for _ in 0..runs {
        let t = Instant::now();
        formula = JoinAnalysis::new(&spec, tol)?.spectrum(tol)?.expand();
        formula_seconds.push(t.elapsed().as_secs_f64());

        let t = Instant::now();
        oracle = sym_eigenvalues(&hjoin_explicit(&spec).adjacency_f64())?;
        oracle_seconds.push(t.elapsed().as_secs_f64());
    }
    Ok(BenchResult {
        p,
        n,
        density,
        seed,
        formula_seconds,
        oracle_seconds,
        spectrum_distance: matching_distance(&formula, &oracle),
    })
}
