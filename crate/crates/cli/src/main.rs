//! Command-line surface: constructs the named self-referential sentences
//! over a theory loaded from a definition file, evaluates sentences in the
//! standard model, runs soundness audits and independence probes, and prints
//! reports in a human-readable or stable machine-readable form.
//!
//! Exit codes: 0 success, 1 input error, 2 precondition violation,
//! 3 internal invariant failure.

use clap::{Parser, Subcommand, ValueEnum};
use selfref_core::coding::codec_spec;
use selfref_core::report::Kv;
use selfref_core::semantics::{DEFAULT_DEPTH_BOUND, DEFAULT_WITNESS_BOUND};
use selfref_core::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "selfref",
    version,
    about = "Self-reference engine for first-order arithmetic: Goedel, Rosser, Henkin, and pseudo-diagonal sentences over pluggable theories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report rendering: human-readable text or the stable flattened form
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pi,
    Sigma,
}

#[derive(Subcommand)]
enum Command {
    /// Build the diagonal fixed point of a one-free-variable predicate
    Diagonalize {
        /// Predicate text with exactly one free variable
        psi: String,
        /// Universal (pi) or existential (sigma) construction
        #[arg(long, value_enum, default_value_t = Mode::Pi)]
        mode: Mode,
        /// Hierarchy level of the fixed point
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Construct and evaluate the canonical Goedel sentence of a theory
    Goedel {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Construct and evaluate the canonical Rosser sentence of a theory
    Rosser {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Construct and evaluate the sentence asserting its own provability
    Henkin {
        #[arg(long)]
        theory: PathBuf,
        /// Use the Rosser provability predicate instead of the plain one
        #[arg(long)]
        rosser: bool,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Decide a pseudo-diagonal template and optionally construct its fixed
    /// point over a theory
    Pseudo {
        /// Built-in template: P (unprovable and irrefutable) or R
        /// (provability implies irrefutability)
        #[arg(long, conflicts_with_all = ["template", "contexts"])]
        builtin: Option<String>,
        /// Propositional template over p1..pn, e.g. "~p1 & ~p2"
        #[arg(long, requires = "contexts")]
        template: Option<String>,
        /// Semicolon-separated one-variable contexts, e.g. "p; ~p"
        #[arg(long)]
        contexts: Option<String>,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Evaluate every provable sentence of a class against the standard model
    Audit {
        #[arg(long)]
        theory: PathBuf,
        /// Sentence class: delta0, sigmaN, or piN
        #[arg(long = "class")]
        class: String,
        /// Largest proof index scanned
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Scan proof indices for a sentence and its negation
    Probe {
        /// Sentence text
        phi: String,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Compare least proof indices of a sentence and its negation against
    /// the Rosser provability evaluation
    RosserCases {
        /// Sentence text
        phi: String,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Evaluate a sentence in the standard model
    Eval {
        /// Sentence text
        phi: String,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BOUND)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: u32,
    },
    /// Classify a formula in the arithmetical hierarchy
    Classify {
        /// Formula text (may be open)
        phi: String,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Print the versioned coding scheme
    CodecSpec,
}

enum AppError {
    Input(String),
    Precondition(String),
    Internal(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Input(_) => 1,
            AppError::Precondition(_) => 2,
            AppError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Input(m) | AppError::Precondition(m) | AppError::Internal(m) => m,
        }
    }
}

impl From<TheoryError> for AppError {
    fn from(e: TheoryError) -> AppError {
        match e {
            TheoryError::UnsupportedBackend(_) => AppError::Precondition(e.to_string()),
            other => AppError::Input(other.to_string()),
        }
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> AppError {
        AppError::Input(e.to_string())
    }
}

impl From<CodingError> for AppError {
    fn from(e: CodingError) -> AppError {
        AppError::Input(e.to_string())
    }
}

impl From<ClassifyError> for AppError {
    fn from(e: ClassifyError) -> AppError {
        AppError::Input(e.to_string())
    }
}

impl From<EvalError> for AppError {
    fn from(e: EvalError) -> AppError {
        match e {
            EvalError::OpenFormula(_)
            | EvalError::InvalidFuel
            | EvalError::ClassTooHigh { .. } => AppError::Precondition(e.to_string()),
            other => AppError::Input(other.to_string()),
        }
    }
}

impl From<DiagonalError> for AppError {
    fn from(e: DiagonalError) -> AppError {
        match e {
            DiagonalError::Coding(inner) => AppError::Input(inner.to_string()),
            DiagonalError::Classify(inner) => AppError::Input(inner.to_string()),
            other => AppError::Precondition(other.to_string()),
        }
    }
}

impl From<TemplateError> for AppError {
    fn from(e: TemplateError) -> AppError {
        match e {
            TemplateError::Parse(inner) => AppError::Input(inner.to_string()),
            other => AppError::Precondition(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command) {
        Ok(kv) => {
            match format {
                OutputFormat::Text => print!("{}", kv.render_text()),
                OutputFormat::Structured => print!("{}", kv.render_structured()),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn load_theory(path: &Path) -> Result<Theory, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_theory_file(&text)?)
}

fn registry_for(theory: Option<&Theory>) -> Result<DefinedAtomRegistry, AppError> {
    let mut registry = DefinedAtomRegistry::standard();
    if let Some(t) = theory {
        registry.register_theory(t)?;
    }
    Ok(registry)
}

fn make_fuel(fuel: u64, depth: u32) -> Result<Fuel, AppError> {
    Ok(Fuel::new(fuel, depth)?)
}

/// Constructs a named fixed point, checks the self-reference identity, and
/// evaluates the sentence. Identity failure is an internal invariant
/// violation and must never occur.
fn fixed_point_command(
    command: &str,
    theory_path: &Path,
    fuel: u64,
    depth: u32,
    build: impl FnOnce(&Theory) -> FixedPointReport,
) -> Result<Kv, AppError> {
    let theory = load_theory(theory_path)?;
    let registry = registry_for(Some(&theory))?;
    let fuel = make_fuel(fuel, depth)?;
    let report = build(&theory);
    if !report.identity_holds() {
        return Err(AppError::Internal(format!(
            "self-reference identity mismatch: diag gives {} but the sentence codes to {}",
            report.diag_of_alpha, report.theta_code
        )));
    }
    let verdict = eval(&report.theta, &fuel, &registry)?;
    Ok(Kv::node()
        .with("command", Kv::leaf(command))
        .with("theory", Kv::leaf(theory.name()))
        .with("report", report.to_kv())
        .with("eval", verdict.to_kv()))
}

fn run(command: Command) -> Result<Kv, AppError> {
    match command {
        Command::Diagonalize { psi, mode, n } => {
            let psi = parse(&psi)?;
            let report = match mode {
                Mode::Pi => fixed_point_pi(&psi, n)?,
                Mode::Sigma => fixed_point_sigma(&psi, n)?,
            };
            if !report.identity_holds() {
                return Err(AppError::Internal(
                    "self-reference identity mismatch".to_string(),
                ));
            }
            Ok(Kv::node()
                .with("command", Kv::leaf("diagonalize"))
                .with(
                    "mode",
                    Kv::leaf(match mode {
                        Mode::Pi => "pi",
                        Mode::Sigma => "sigma",
                    }),
                )
                .with("n", Kv::leaf(n))
                .with("psi", Kv::leaf(&psi))
                .with("report", report.to_kv()))
        }
        Command::Goedel {
            theory,
            fuel,
            depth,
        } => fixed_point_command("goedel", &theory, fuel, depth, goedel_sentence),
        Command::Rosser {
            theory,
            fuel,
            depth,
        } => fixed_point_command("rosser", &theory, fuel, depth, rosser_sentence),
        Command::Henkin {
            theory,
            rosser,
            fuel,
            depth,
        } => {
            let build = if rosser {
                rosser_henkin_sentence
            } else {
                henkin_sentence
            };
            let name = if rosser { "henkin-rosser" } else { "henkin" };
            fixed_point_command(name, &theory, fuel, depth, build)
        }
        Command::Pseudo {
            builtin,
            template,
            contexts,
            theory,
            fuel,
            depth,
        } => {
            let (template, contexts) = match (builtin, template, contexts) {
                (Some(name), None, None) => match name.as_str() {
                    "P" => builtin_pseudo_p(),
                    "R" => builtin_pseudo_r(),
                    other => {
                        return Err(AppError::Input(format!(
                            "unknown builtin template '{other}' (expected P or R)"
                        )));
                    }
                },
                (None, Some(template), Some(contexts)) => {
                    let template = parse_template(&template)?;
                    let contexts = contexts
                        .split(';')
                        .map(|c| parse_template(c.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    (template, contexts)
                }
                _ => {
                    return Err(AppError::Input(
                        "pseudo needs either --builtin P|R or --template with --contexts"
                            .to_string(),
                    ));
                }
            };
            let decision = pseudo_goedelian_decide(&template);
            let mut kv = Kv::node()
                .with("command", Kv::leaf("pseudo"))
                .with("template", Kv::leaf(template.body()))
                .with(
                    "decided",
                    Kv::leaf(if decision.positive {
                        "provable"
                    } else {
                        "refutable"
                    }),
                );
            if let Some(path) = theory {
                let theory = load_theory(&path)?;
                let mut registry = registry_for(Some(&theory))?;
                let fuel = make_fuel(fuel, depth)?;
                let report = pseudo_goedelian(&theory, &template, &contexts, &mut registry)?;
                if !report.identity_holds() {
                    return Err(AppError::Internal(
                        "self-reference identity mismatch".to_string(),
                    ));
                }
                let verdict = eval(&report.theta, &fuel, &registry)?;
                kv.push("theory", Kv::leaf(theory.name()));
                kv.push("report", report.to_kv());
                kv.push("eval", verdict.to_kv());
            }
            Ok(kv)
        }
        Command::Audit {
            theory,
            class,
            bound,
            fuel,
            depth,
        } => {
            let theory = load_theory(&theory)?;
            let registry = registry_for(Some(&theory))?;
            let gamma: HierarchyClass = class.parse().map_err(AppError::Input)?;
            let fuel = make_fuel(fuel, depth)?;
            let report = soundness_audit(&theory, gamma, bound, &fuel, &registry)?;
            Ok(Kv::node()
                .with("command", Kv::leaf("audit"))
                .with("audit", report.to_kv()))
        }
        Command::Probe {
            phi,
            theory,
            bound,
        } => {
            let theory = load_theory(&theory)?;
            let registry = registry_for(Some(&theory))?;
            let phi = parse_with(&phi, &registry.signatures())?;
            let outcome = independence_probe(&theory, &phi, bound)?;
            Ok(Kv::node()
                .with("command", Kv::leaf("probe"))
                .with("theory", Kv::leaf(theory.name()))
                .with("sentence", Kv::leaf(&phi))
                .with("bound", Kv::leaf(bound))
                .with("probe", outcome.to_kv()))
        }
        Command::RosserCases {
            phi,
            theory,
            bound,
            fuel,
            depth,
        } => {
            let theory = load_theory(&theory)?;
            let registry = registry_for(Some(&theory))?;
            let phi = parse_with(&phi, &registry.signatures())?;
            let fuel = make_fuel(fuel, depth)?;
            let report = rosser_case_analysis(&theory, &phi, bound, &fuel)?;
            if report.prediction_matched == Some(false) {
                return Err(AppError::Internal(format!(
                    "Rosser evaluation contradicts the witness-comparison prediction (m={:?}, n={:?})",
                    report.m, report.n
                )));
            }
            Ok(Kv::node()
                .with("command", Kv::leaf("rosser-cases"))
                .with("theory", Kv::leaf(theory.name()))
                .with("sentence", Kv::leaf(&phi))
                .with("cases", report.to_kv()))
        }
        Command::Eval {
            phi,
            theory,
            fuel,
            depth,
        } => {
            let theory = theory.map(|p| load_theory(&p)).transpose()?;
            let registry = registry_for(theory.as_ref())?;
            let phi = parse_with(&phi, &registry.signatures())?;
            let fuel = make_fuel(fuel, depth)?;
            let verdict = eval(&phi, &fuel, &registry)?;
            Ok(Kv::node()
                .with("command", Kv::leaf("eval"))
                .with("sentence", Kv::leaf(&phi))
                .with("class", Kv::leaf(classify(&phi)?))
                .with("eval", verdict.to_kv()))
        }
        Command::Classify { phi, theory } => {
            let theory = theory.map(|p| load_theory(&p)).transpose()?;
            let registry = registry_for(theory.as_ref())?;
            let phi = parse_with(&phi, &registry.signatures())?;
            let class = classify(&phi)?;
            let free = phi.free_vars();
            Ok(Kv::node()
                .with("command", Kv::leaf("classify"))
                .with("formula", Kv::leaf(&phi))
                .with("class", Kv::leaf(class))
                .with(
                    "free_variables",
                    Kv::leaf(free.into_iter().collect::<Vec<_>>().join(",")),
                ))
        }
        Command::CodecSpec => Ok(Kv::node()
            .with("command", Kv::leaf("codec-spec"))
            .with("spec", {
                let mut kv = Kv::node();
                for (i, line) in codec_spec().lines().enumerate() {
                    kv.push(format!("{i:02}"), Kv::leaf(line));
                }
                kv
            })),
    }
}
