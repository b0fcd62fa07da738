//! `gpd`: generalized persistence diagrams from the command line.
//!
//! Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 a check failed.

use std::fmt::Display;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpd_core::duality::{check_duality_with, dualize_any, manifold_report, DualityError, DualityMode};
use gpd_core::exec::{map_range, Strategy};
use gpd_core::io::{
    any_family_file, load_complex, load_family, load_galois, load_module, load_poset, to_json_string, ComplexFile,
    DiagramFile, IoError, PosetFile,
};
use gpd_core::modules::{check_equivalence, check_module_equivalence};
use gpd_core::persistence::{check_functoriality, Cofiltration, Filtration};
use gpd_core::random::{
    random_family, random_galois, random_galois_from, random_int_function, random_module, random_poset,
    simplex_skeleton, trial_rng,
};
use gpd_core::simplicial::barycentric_subdivision;
use gpd_core::{check_rota, AnyFamily, FinitePoset, GaloisConnection, IntervalPoset, PrimeField, SimplicialComplex};
use rand::Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gpd", version, about = "Generalized persistence diagrams by Möbius inversion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence diagram of a filtration or cofiltration file.
    Diagram(DiagramArgs),
    /// Dual (co)filtration on the barycentric subdivision.
    Dualize {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exact check on given inputs or on seeded random trials.
    Check(CheckArgs),
    /// Hasse diagram of a poset or of its interval poset.
    Hasse {
        input: PathBuf,
        /// Use the poset of intervals under the product order.
        #[arg(long)]
        interval: bool,
        /// Emit graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Barycentric subdivision of a complex file or `builtin:NAME`.
    Subdivide {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DiagramArgs {
    input: PathBuf,
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    degree: Option<usize>,
    /// Every degree from 0 to the dimension of the complex.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 2)]
    field: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Rota,
    Functoriality,
    Equivalence,
    Duality,
    ModuleEquivalence,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Rota => "rota",
            CheckKind::Functoriality => "functoriality",
            CheckKind::Equivalence => "equivalence",
            CheckKind::Duality => "duality",
            CheckKind::ModuleEquivalence => "module-equivalence",
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    what: CheckKind,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Family file (functoriality, equivalence, duality) or module file
    /// (module-equivalence) to check instead of random inputs.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Galois connection file (rota, functoriality, module-equivalence).
    #[arg(long)]
    galois: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    field: u64,
    /// Manifold dimension for duality; defaults to the dimension of the complex.
    #[arg(long)]
    dim: Option<usize>,
    /// Run duality even when the manifold flags fail.
    #[arg(long)]
    advisory: bool,
    /// Ambient manifold for random duality trials: a complex file or `builtin:NAME`.
    #[arg(long, default_value = "builtin:hexagon")]
    complex: PathBuf,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

enum Failure {
    Io(String),
    Invalid(String),
}

impl Failure {
    fn invalid(e: impl Display) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_io() {
            Failure::Io(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Diagram(args) => diagram(&args).map(|()| true),
        Command::Dualize { input, out } => {
            let family = load_family(&input)?;
            emit(out.as_deref(), &to_json_string(&any_family_file(&dualize_any(&family))))?;
            Ok(true)
        }
        Command::Check(args) => check(&args),
        Command::Hasse { input, interval, dot } => {
            let p = Arc::new(load_poset(&input)?);
            let (poset, name) = if interval {
                (Arc::clone(IntervalPoset::new(p).poset()), "IntP")
            } else {
                (p, "P")
            };
            let text = if dot {
                poset.to_dot(name)
            } else {
                to_json_string(&PosetFile::of(&poset))
            };
            emit(None, &text)?;
            Ok(true)
        }
        Command::Subdivide { input, out } => {
            let k = load_complex(&input)?;
            emit(out.as_deref(), &to_json_string(&ComplexFile::of(&barycentric_subdivision(&k))))?;
            Ok(true)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(Failure::invalid)
}

fn diagram(args: &DiagramArgs) -> Result<(), Failure> {
    let field = field(args.field)?;
    let family = load_family(&args.input)?;
    let text = match args.degree {
        Some(d) => to_json_string(&DiagramFile::of(&family.diagram(d, field))),
        None => {
            let top = family.ambient().dim().unwrap_or(0);
            let all: Vec<DiagramFile> = (0..=top).map(|d| DiagramFile::of(&family.diagram(d, field))).collect();
            to_json_string(&all)
        }
    };
    emit(args.out.as_deref(), &text)
}

/// Result of one trial: `Ok(None)` passed, `Ok(Some(report))` failed.
type Trial = Result<Option<Value>, String>;

fn verdict<T: serde::Serialize>(passed: bool, report: &T) -> Trial {
    Ok((!passed).then(|| serde_json::to_value(report).expect("report serializes")))
}

fn check(args: &CheckArgs) -> Result<bool, Failure> {
    let field = field(args.field)?;
    let strategy = if args.sequential { Strategy::Sequential } else { Strategy::Parallel };
    let galois = args.galois.as_deref().map(load_galois).transpose()?;
    let mode = if args.advisory { DualityMode::Advisory } else { DualityMode::Strict };

    // Inputs given on the command line: one deterministic check.
    if let Some(input) = &args.input {
        let outcome = match args.what {
            CheckKind::Rota => return Err(Failure::Invalid("rota takes --galois, not --input".into())),
            CheckKind::Functoriality => {
                let family = load_family(input)?;
                let c = galois.ok_or_else(|| Failure::Invalid("functoriality with --input needs --galois".into()))?;
                let report = match &family {
                    AnyFamily::Filtration(f) => check_functoriality(f, &c, field),
                    AnyFamily::Cofiltration(f) => check_functoriality(f, &c, field),
                }
                .map_err(Failure::invalid)?;
                verdict(report.passed, &report)
            }
            CheckKind::Equivalence => {
                let report = match load_family(input)? {
                    AnyFamily::Filtration(f) => check_equivalence(&f, field),
                    AnyFamily::Cofiltration(f) => check_equivalence(&f, field),
                };
                verdict(report.passed(), &report)
            }
            CheckKind::Duality => {
                let family = load_family(input)?;
                let m = args.dim.or(family.ambient().dim()).unwrap_or(0);
                let report = check_duality_with(&family, m, field, mode, strategy).map_err(Failure::invalid)?;
                verdict(report.passed(), &report)
            }
            CheckKind::ModuleEquivalence => {
                let module = load_module(input)?;
                let c = galois.ok_or_else(|| Failure::Invalid("module-equivalence with --input needs --galois".into()))?;
                let report = check_module_equivalence(&module, &c).map_err(Failure::invalid)?;
                verdict(report.passed, &report)
            }
        };
        return finish(args, vec![outcome], false);
    }

    let ambient = match args.what {
        CheckKind::Duality => Arc::new(load_complex(&args.complex)?),
        _ => Arc::new(simplex_skeleton(5, 2)),
    };
    let m = args.dim.or(ambient.dim()).unwrap_or(0);
    if let CheckKind::Duality = args.what {
        let hypotheses = manifold_report(&ambient, m, field);
        if !hypotheses.all_pass() && mode == DualityMode::Strict {
            return Err(Failure::Invalid(DualityError::HypothesisNotMet(hypotheses).to_string()));
        }
    }
    let outcomes = map_range(strategy, args.trials as usize, |t| {
        let mut rng = trial_rng(args.seed, t as u64);
        random_trial(args.what, &mut rng, galois.as_ref(), &ambient, m, field, mode)
    });
    finish(args, outcomes, true)
}

fn random_trial(
    what: CheckKind,
    rng: &mut impl Rng,
    galois: Option<&GaloisConnection>,
    ambient: &Arc<SimplicialComplex>,
    m: usize,
    field: PrimeField,
    mode: DualityMode,
) -> Trial {
    let connection = |rng: &mut _, p: &Arc<FinitePoset>| match galois {
        Some(c) => c.clone(),
        None => random_galois_from(rng, p, 5),
    };
    match what {
        CheckKind::Rota => {
            let c = galois.cloned().unwrap_or_else(|| random_galois(rng, 6));
            let m = random_int_function(rng, Arc::clone(c.source()), -9, 9);
            let report = check_rota(&c, &m);
            verdict(report.passed, &report)
        }
        CheckKind::Functoriality => {
            let p = match galois {
                Some(c) => Arc::clone(c.source()),
                None => Arc::new(random_poset(rng, 5)),
            };
            let c = connection(rng, &p);
            let report = if rng.gen_bool(0.5) {
                let f: Filtration = random_family(rng, p, Arc::clone(ambient));
                check_functoriality(&f, &c, field)
            } else {
                let f: Cofiltration = random_family(rng, p, Arc::clone(ambient));
                check_functoriality(&f, &c, field)
            }
            .map_err(|e| e.to_string())?;
            verdict(report.passed, &report)
        }
        CheckKind::Equivalence => {
            let p = Arc::new(random_poset(rng, 5));
            let report = if rng.gen_bool(0.5) {
                let f: Filtration = random_family(rng, p, Arc::clone(ambient));
                check_equivalence(&f, field)
            } else {
                let f: Cofiltration = random_family(rng, p, Arc::clone(ambient));
                check_equivalence(&f, field)
            };
            verdict(report.passed(), &report)
        }
        CheckKind::Duality => {
            let p = Arc::new(random_poset(rng, 4));
            let family = if rng.gen_bool(0.5) {
                AnyFamily::Filtration(random_family(rng, p, Arc::clone(ambient)))
            } else {
                AnyFamily::Cofiltration(random_family(rng, p, Arc::clone(ambient)))
            };
            let report =
                check_duality_with(&family, m, field, mode, Strategy::Sequential).map_err(|e| e.to_string())?;
            verdict(report.passed(), &report)
        }
        CheckKind::ModuleEquivalence => {
            let p = match galois {
                Some(c) => Arc::clone(c.source()),
                None => Arc::new(random_poset(rng, 5)),
            };
            let c = connection(rng, &p);
            let module = random_module(rng, p, field, 3);
            let report = check_module_equivalence(&module, &c).map_err(|e| e.to_string())?;
            verdict(report.passed, &report)
        }
    }
}

/// Prints the JSON report and reproduction commands; returns whether every trial passed.
fn finish(args: &CheckArgs, outcomes: Vec<Trial>, seeded: bool) -> Result<bool, Failure> {
    let mut failures = Vec::new();
    for (t, outcome) in outcomes.iter().enumerate() {
        let (report, error) = match outcome {
            Ok(None) => continue,
            Ok(Some(report)) => (report.clone(), Value::Null),
            Err(e) => (Value::Null, Value::String(e.clone())),
        };
        let mut entry = json!({ "trial": t, "report": report, "error": error });
        if seeded {
            let seed = args.seed.wrapping_add(t as u64);
            let repro = repro_command(args, seed);
            eprintln!("trial {t} failed; reproduce with: {repro}");
            entry["seed"] = json!(seed);
            entry["repro"] = json!(repro);
        }
        failures.push(entry);
    }
    let passed = failures.is_empty();
    let report = json!({
        "check": args.what.name(),
        "seed": seeded.then_some(args.seed),
        "trials": outcomes.len(),
        "field": args.field,
        "passed": passed,
        "failures": failures,
    });
    emit(None, &to_json_string(&report))?;
    Ok(passed)
}

fn repro_command(args: &CheckArgs, seed: u64) -> String {
    let mut cmd = format!("gpd check {} --seed {seed} --trials 1 --field {}", args.what.name(), args.field);
    if let Some(g) = &args.galois {
        cmd += &format!(" --galois {}", g.display());
    }
    if let CheckKind::Duality = args.what {
        cmd += &format!(" --complex {}", args.complex.display());
        if let Some(m) = args.dim {
            cmd += &format!(" --dim {m}");
        }
        if args.advisory {
            cmd += " --advisory";
        }
    }
    cmd
}
