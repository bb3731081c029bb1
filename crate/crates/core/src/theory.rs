//! Theory backends with executable proof relations, and the provability,
//! Rosser-provability, and consistency formula builders over them.
//!
//! A theory exposes the decidable relation `prf(y, x)`: "`y` is the index of
//! a proof of the sentence coded by `x`". Three backends are provided:
//!
//! * **Finite** — an explicit ordered list of sentences; `prf(y, x)` holds
//!   exactly when `y` indexes a listed sentence with code `x`. This is a
//!   test-harness idealization (it is not an extension of any arithmetic):
//!   its point is that facts quantifying over proof indices become decidable.
//! * **Enumerated** — an infinite stream given by a built-in generator plus
//!   an optional finite prefix. The `all_sentences` generator places every
//!   sentence at the index equal to its own code (gaps elsewhere), so the
//!   least proof index of a sentence is its code. Enumeration order is part
//!   of theory identity: Rosser constructions compare least proof indices,
//!   so reordering a stream builds a different theory.
//! * **Calculus** — a Hilbert-style system: proof indices are codes of
//!   derivations, lists of formula codes in which every line is an axiom or
//!   follows from earlier lines by modus ponens.
//!
//! Proof relations are exposed to formulas through registered defined atoms
//! (`prf_T`, `prfneg_T`): evaluation of a formula containing them calls the
//! backend. The atoms are declared `delta0`, matching the decidability of
//! the relation they compute; the provability formula `exists y. prf_T(y, x)`
//! then classifies as `sigma1`.

use crate::coding::{
    self, decode_formula, encode_formula, is_sentence_code, negation_code, Code, CodingError,
};
use crate::formula::{parse, Formula, HierarchyClass, Term};
use crate::formula::template::PropTemplate;
use crate::semantics::support::Support;
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("theory sentences must be closed: '{0}' has free variables")]
    OpenSentence(String),
    #[error("invalid theory name '{0}': must be an identifier")]
    BadName(String),
    #[error("symbol '{0}' is already registered")]
    SymbolCollision(String),
    #[error("unsupported backend for this operation: {0}")]
    UnsupportedBackend(String),
    #[error("unknown generator '{0}' (built-ins: all_sentences, even_codes)")]
    UnknownGenerator(String),
    #[error("theory file, line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Coding(#[from] CodingError),
}

/// Built-in enumerators for enumerated backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Every sentence, placed at the index equal to its code.
    AllSentences,
    /// Every sentence with an even code, placed at the index equal to its
    /// code.
    EvenCodes,
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::AllSentences => "all_sentences",
            Generator::EvenCodes => "even_codes",
        }
    }

    pub fn by_name(name: &str) -> Option<Generator> {
        match name {
            "all_sentences" => Some(Generator::AllSentences),
            "even_codes" => Some(Generator::EvenCodes),
            _ => None,
        }
    }

    fn admits(&self, code: &BigUint) -> bool {
        match self {
            Generator::AllSentences => is_sentence_code(code),
            Generator::EvenCodes => {
                (code % BigUint::from(2u32)).is_zero() && is_sentence_code(code)
            }
        }
    }

    fn sentence_at(&self, index: &BigUint) -> Option<Formula> {
        if self.admits(index) {
            decode_formula(&Code::from(index.clone())).ok()
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
struct FiniteBackend {
    theorems: Vec<Formula>,
    codes: Vec<Code>,
}

#[derive(Debug, Clone)]
struct EnumeratedBackend {
    prefix: Vec<Formula>,
    prefix_codes: Vec<Code>,
    generator: Generator,
}

#[derive(Debug, Clone)]
struct CalculusBackend {
    axioms: Vec<Formula>,
    axiom_codes: Vec<Code>,
}

#[derive(Debug, Clone)]
enum Backend {
    Finite(FiniteBackend),
    Enumerated(EnumeratedBackend),
    Calculus(CalculusBackend),
}

/// An r.e. theory with a decidable proof relation. Immutable after
/// construction; extension produces a new value.
#[derive(Debug, Clone)]
pub struct Theory {
    name: String,
    backend: Backend,
}

fn check_sentences(sentences: &[Formula]) -> Result<Vec<Code>, TheoryError> {
    sentences
        .iter()
        .map(|s| {
            if !s.is_sentence() {
                return Err(TheoryError::OpenSentence(s.to_string()));
            }
            Ok(encode_formula(s)?)
        })
        .collect()
}

fn check_name(name: &str) -> Result<(), TheoryError> {
    if parse::is_identifier(name) {
        Ok(())
    } else {
        Err(TheoryError::BadName(name.to_string()))
    }
}

impl Theory {
    /// A finite theory: an explicit ordered list of sentences.
    pub fn finite(name: &str, theorems: Vec<Formula>) -> Result<Theory, TheoryError> {
        check_name(name)?;
        let codes = check_sentences(&theorems)?;
        Ok(Theory {
            name: name.to_string(),
            backend: Backend::Finite(FiniteBackend { theorems, codes }),
        })
    }

    /// An enumerated theory: `prefix` occupies the initial indices, then the
    /// generator's stream continues at shifted indices.
    pub fn enumerated(
        name: &str,
        generator: Generator,
        prefix: Vec<Formula>,
    ) -> Result<Theory, TheoryError> {
        check_name(name)?;
        let prefix_codes = check_sentences(&prefix)?;
        Ok(Theory {
            name: name.to_string(),
            backend: Backend::Enumerated(EnumeratedBackend {
                prefix,
                prefix_codes,
                generator,
            }),
        })
    }

    /// The theory that proves every sentence: each sentence sits at the index
    /// equal to its own code.
    pub fn all_sentences(name: &str) -> Result<Theory, TheoryError> {
        Theory::enumerated(name, Generator::AllSentences, Vec::new())
    }

    /// A Hilbert-style calculus over the given axioms, closed under modus
    /// ponens through coded derivations.
    pub fn calculus(name: &str, axioms: Vec<Formula>) -> Result<Theory, TheoryError> {
        check_name(name)?;
        let axiom_codes = check_sentences(&axioms)?;
        Ok(Theory {
            name: name.to_string(),
            backend: Backend::Calculus(CalculusBackend {
                axioms,
                axiom_codes,
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn backend_kind(&self) -> &'static str {
        match &self.backend {
            Backend::Finite(_) => "finite",
            Backend::Enumerated(_) => "enumerated",
            Backend::Calculus(_) => "calculus",
        }
    }

    /// The explicit theorem list of a finite theory.
    pub fn finite_theorems(&self) -> Option<&[Formula]> {
        match &self.backend {
            Backend::Finite(f) => Some(&f.theorems),
            _ => None,
        }
    }

    /// The axiom list of a calculus theory.
    pub fn calculus_axioms(&self) -> Option<&[Formula]> {
        match &self.backend {
            Backend::Calculus(c) => Some(&c.axioms),
            _ => None,
        }
    }

    /// The proof relation: `y` indexes a proof of the sentence coded by `x`.
    /// Total and decidable on every backend.
    pub fn prf(&self, y: &BigUint, x: &Code) -> bool {
        match &self.backend {
            Backend::Finite(f) => match usize::try_from(y) {
                Ok(i) => i < f.codes.len() && &f.codes[i] == x,
                Err(_) => false,
            },
            Backend::Enumerated(e) => {
                let k = BigUint::from(e.prefix_codes.len());
                if y < &k {
                    let i = usize::try_from(y).expect("below prefix length");
                    &e.prefix_codes[i] == x
                } else {
                    let i = y - &k;
                    &i == x.value() && e.generator.admits(x.value())
                }
            }
            Backend::Calculus(c) => match coding::decode_list(y) {
                Some(lines) => {
                    !lines.is_empty()
                        && lines.last() == Some(x.value())
                        && c.valid_derivation(&lines)
                }
                None => false,
            },
        }
    }

    /// The sentence proved at index `y`, if any.
    pub fn theorem_at(&self, y: &BigUint) -> Option<Formula> {
        match &self.backend {
            Backend::Finite(f) => usize::try_from(y).ok().and_then(|i| f.theorems.get(i)).cloned(),
            Backend::Enumerated(e) => {
                let k = BigUint::from(e.prefix.len());
                if y < &k {
                    let i = usize::try_from(y).expect("below prefix length");
                    Some(e.prefix[i].clone())
                } else {
                    e.generator.sentence_at(&(y - &k))
                }
            }
            Backend::Calculus(c) => {
                let lines = coding::decode_list(y)?;
                if !lines.is_empty() && c.valid_derivation(&lines) {
                    decode_formula(&Code::from(lines.last().expect("nonempty").clone())).ok()
                } else {
                    None
                }
            }
        }
    }

    /// All proof indices of the sentence coded by `x`, when that set is
    /// finite and computable. `None` for calculus backends, where padding
    /// makes the set infinite and membership-only decidable.
    pub fn proof_indices_of(&self, x: &Code) -> Option<Vec<BigUint>> {
        match &self.backend {
            Backend::Finite(f) => Some(
                f.codes
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| *c == x)
                    .map(|(i, _)| BigUint::from(i))
                    .collect(),
            ),
            Backend::Enumerated(e) => {
                let k = BigUint::from(e.prefix_codes.len());
                let mut out: Vec<BigUint> = e
                    .prefix_codes
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| *c == x)
                    .map(|(i, _)| BigUint::from(i))
                    .collect();
                if e.generator.admits(x.value()) {
                    out.push(x.value() + &k);
                }
                Some(out)
            }
            Backend::Calculus(_) => None,
        }
    }

    /// Decides provability outright where the backend allows it.
    pub fn proves_decided(&self, x: &Code) -> Option<bool> {
        match &self.backend {
            Backend::Finite(f) => Some(f.codes.contains(x)),
            Backend::Enumerated(e) => {
                Some(e.prefix_codes.contains(x) || e.generator.admits(x.value()))
            }
            Backend::Calculus(_) => None,
        }
    }

    /// Appends a sentence to the theorem stream. Finite lists grow at the
    /// end; enumerated streams place the new sentence after the existing
    /// prefix, shifting the generator uniformly (relative order preserved).
    /// The original theory value is unchanged.
    pub fn extend(&self, sentence: Formula) -> Result<Theory, TheoryError> {
        if !sentence.is_sentence() {
            return Err(TheoryError::OpenSentence(sentence.to_string()));
        }
        let name = format!("{}_ext", self.name);
        match &self.backend {
            Backend::Finite(f) => {
                let mut theorems = f.theorems.clone();
                theorems.push(sentence);
                Theory::finite(&name, theorems)
            }
            Backend::Enumerated(e) => {
                let mut prefix = e.prefix.clone();
                prefix.push(sentence);
                Theory::enumerated(&name, e.generator, prefix)
            }
            Backend::Calculus(_) => Err(TheoryError::UnsupportedBackend(
                "extend is defined for finite and enumerated theories".to_string(),
            )),
        }
    }

    /// Renames the theory (and thereby the registered atom symbols derived
    /// from the name).
    pub fn with_name(mut self, name: &str) -> Result<Theory, TheoryError> {
        check_name(name)?;
        self.name = name.to_string();
        Ok(self)
    }

    /// Fixture-level consistency check for finite theories: the designated
    /// absurdity `~(0 = 0)` is not listed and no sentence appears together
    /// with its negation. `None` for other backends.
    pub fn finite_consistent(&self) -> Option<bool> {
        let f = match &self.backend {
            Backend::Finite(f) => f,
            _ => return None,
        };
        let absurd = encode_formula(&Formula::not(Formula::eq(Term::zero(), Term::zero())))
            .expect("closed formula");
        if f.codes.contains(&absurd) {
            return Some(false);
        }
        for c in &f.codes {
            if f.codes.contains(&negation_code(c)) {
                return Some(false);
            }
        }
        Some(true)
    }

    fn prf_symbol(&self) -> String {
        format!("prf_{}", self.name)
    }

    fn prfneg_symbol(&self) -> String {
        format!("prfneg_{}", self.name)
    }
}

impl CalculusBackend {
    /// A derivation is valid when every line is an axiom or follows from two
    /// earlier lines by modus ponens.
    fn valid_derivation(&self, lines: &[BigUint]) -> bool {
        lines.iter().enumerate().all(|(i, line)| {
            let axiom = self.axiom_codes.iter().any(|c| c.value() == line);
            axiom
                || lines[..i].iter().any(|earlier| {
                    match coding::implication_parts(earlier) {
                        Some((a, b)) => &b == line && lines[..i].contains(&a),
                        None => false,
                    }
                })
        })
    }
}

// ---------------------------------------------------------------------------
// Provability formula builders
// ---------------------------------------------------------------------------

/// The provability predicate of `theory`: `exists y. prf_T(y, x)` with free
/// variable `x`. Classifies as `sigma1`.
pub fn pr_formula(theory: &Theory) -> Formula {
    Formula::exists(
        "y",
        prf_atom(theory, Term::var("y"), Term::var("x")),
    )
}

/// The Rosser provability predicate of `theory`:
/// `exists y. prf_T(y, x) & forall z < y. ~prfneg_T(z, x)`, with `prfneg_T`
/// holding of `(z, x)` when `z` indexes a proof of the negation of the
/// sentence coded by `x`. Classifies as `sigma1`.
pub fn rosser_pr_formula(theory: &Theory) -> Formula {
    Formula::exists(
        "y",
        Formula::and(
            prf_atom(theory, Term::var("y"), Term::var("x")),
            Formula::bforall(
                "z",
                Term::var("y"),
                Formula::not(prfneg_atom(theory, Term::var("z"), Term::var("x"))),
            ),
        ),
    )
}

/// The consistency sentence of `theory`: the negation of the provability
/// predicate instantiated at the code of `~(0 = 0)`. Classifies as `pi1`.
pub fn con_sentence(theory: &Theory) -> Formula {
    let absurdity = Formula::not(Formula::eq(Term::zero(), Term::zero()));
    let code_term = coding::goedel_numeral(&absurdity).expect("closed formula encodes");
    Formula::not(pr_formula(theory).substitute("x", &code_term))
}

/// The `prf_T(y, x)` atom for a theory. Declared `delta0`: the proof
/// relation is decidable, and its negation must stay bounded for the Rosser
/// predicate to classify as `sigma1`.
pub fn prf_atom(theory: &Theory, y: Term, x: Term) -> Formula {
    Formula::atom(theory.prf_symbol(), vec![y, x], HierarchyClass::Delta0)
}

/// The `prfneg_T(z, x)` atom: a proof of the complement of the coded
/// sentence (its negation, or the sentence it negates when it is itself a
/// negation — witness comparison treats a sentence and its negation
/// symmetrically).
pub fn prfneg_atom(theory: &Theory, z: Term, x: Term) -> Formula {
    Formula::atom(theory.prfneg_symbol(), vec![z, x], HierarchyClass::Delta0)
}

/// The diagonal-representation atom `delta(x, y)`, declared `sigma1`.
pub fn delta_atom(x: Term, y: Term) -> Formula {
    Formula::atom(DELTA_SYMBOL, vec![x, y], HierarchyClass::Sigma(1))
}

pub const DELTA_SYMBOL: &str = "delta";

// ---------------------------------------------------------------------------
// Defined-atom registry
// ---------------------------------------------------------------------------

type SemFn = Arc<dyn Fn(&[BigUint]) -> bool + Send + Sync>;
type SupportFn = Arc<dyn Fn(usize, &[BigUint]) -> Option<Support> + Send + Sync>;

/// A registered atom: arity, declared class, total executable semantics over
/// naturals, and an optional finite-support oracle per argument position.
#[derive(Clone)]
pub struct RegisteredAtom {
    pub arity: usize,
    pub class: HierarchyClass,
    semantics: SemFn,
    support: SupportFn,
}

impl RegisteredAtom {
    pub fn eval(&self, args: &[BigUint]) -> bool {
        debug_assert_eq!(args.len(), self.arity);
        (self.semantics)(args)
    }

    /// Finite-support query: with every argument other than `position` fixed
    /// to `others` (in order), returns the finite exception set and limit
    /// value of the atom as a function of the remaining argument, when the
    /// backend can compute it.
    pub fn support(&self, position: usize, others: &[BigUint]) -> Option<Support> {
        (self.support)(position, others)
    }
}

impl fmt::Debug for RegisteredAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegisteredAtom")
            .field("arity", &self.arity)
            .field("class", &self.class)
            .finish()
    }
}

/// Write-once registry mapping atom symbols to their semantics. Populate it
/// in a single-threaded setup phase, then share immutably with evaluation.
#[derive(Debug, Clone, Default)]
pub struct DefinedAtomRegistry {
    atoms: BTreeMap<String, RegisteredAtom>,
}

impl DefinedAtomRegistry {
    pub fn new() -> DefinedAtomRegistry {
        DefinedAtomRegistry::default()
    }

    /// A registry with the diagonal atom already registered.
    pub fn standard() -> DefinedAtomRegistry {
        let mut reg = DefinedAtomRegistry::new();
        reg.register_delta().expect("fresh registry");
        reg
    }

    pub fn get(&self, symbol: &str) -> Option<&RegisteredAtom> {
        self.atoms.get(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(|s| s.as_str())
    }

    /// Signature table for registry-aware parsing.
    pub fn signatures(&self) -> parse::AtomSignatures {
        self.atoms
            .iter()
            .map(|(k, v)| (k.clone(), (v.arity, v.class)))
            .collect()
    }

    pub fn register(
        &mut self,
        symbol: &str,
        atom: RegisteredAtom,
    ) -> Result<(), TheoryError> {
        if self.atoms.contains_key(symbol) {
            return Err(TheoryError::SymbolCollision(symbol.to_string()));
        }
        self.atoms.insert(symbol.to_string(), atom);
        Ok(())
    }

    /// Registers the diagonal atom `delta(x, y)`, true exactly when `x` is a
    /// valid code and `y` is the diagonalization of `x`. Returns the atom
    /// shape over variables `x`, `y`.
    pub fn register_delta(&mut self) -> Result<Formula, TheoryError> {
        let semantics: SemFn = Arc::new(|args: &[BigUint]| {
            let code = Code::from(args[0].clone());
            match coding::diag(&code) {
                Ok(d) => d.value() == &args[1],
                Err(_) => false,
            }
        });
        let support: SupportFn = Arc::new(|position, others| {
            if position != 1 {
                return None;
            }
            let code = Code::from(others[0].clone());
            let exceptions = match coding::diag(&code) {
                Ok(d) => vec![d.into_value()],
                Err(_) => vec![],
            };
            Some(Support {
                exceptions,
                limit: false,
            })
        });
        self.register(
            DELTA_SYMBOL,
            RegisteredAtom {
                arity: 2,
                class: HierarchyClass::Sigma(1),
                semantics,
                support,
            },
        )?;
        Ok(delta_atom(Term::var("x"), Term::var("y")))
    }

    /// Registers `prf_T` and `prfneg_T` for a theory. The closures capture a
    /// clone of the (immutable) theory.
    pub fn register_theory(&mut self, theory: &Theory) -> Result<(), TheoryError> {
        let t = theory.clone();
        let semantics: SemFn = Arc::new(move |args: &[BigUint]| {
            t.prf(&args[0], &Code::from(args[1].clone()))
        });
        let t = theory.clone();
        let support: SupportFn = Arc::new(move |position, others| match position {
            0 => {
                let exceptions = t.proof_indices_of(&Code::from(others[0].clone()))?;
                Some(Support {
                    exceptions,
                    limit: false,
                })
            }
            1 => {
                let exceptions = match t.code_of_theorem_at(&others[0]) {
                    Some(c) => vec![c.into_value()],
                    None => vec![],
                };
                Some(Support {
                    exceptions,
                    limit: false,
                })
            }
            _ => None,
        });
        self.register(
            &theory.prf_symbol(),
            RegisteredAtom {
                arity: 2,
                class: HierarchyClass::Delta0,
                semantics,
                support,
            },
        )?;

        let t = theory.clone();
        let semantics: SemFn = Arc::new(move |args: &[BigUint]| {
            t.prf(&args[0], &coding::complement_code(&Code::from(args[1].clone())))
        });
        let t = theory.clone();
        let support: SupportFn = Arc::new(move |position, others| match position {
            0 => {
                let target = coding::complement_code(&Code::from(others[0].clone()));
                let exceptions = t.proof_indices_of(&target)?;
                Some(Support {
                    exceptions,
                    limit: false,
                })
            }
            1 => {
                let exceptions = match t.code_of_theorem_at(&others[0]) {
                    Some(c) => coding::complement_preimages(&c)
                        .into_iter()
                        .map(Code::into_value)
                        .collect(),
                    None => vec![],
                };
                Some(Support {
                    exceptions,
                    limit: false,
                })
            }
            _ => None,
        });
        self.register(
            &theory.prfneg_symbol(),
            RegisteredAtom {
                arity: 2,
                class: HierarchyClass::Delta0,
                semantics,
                support,
            },
        )
    }

    /// Registers a provability-context atom `prctx_<theory>_<i>(x)`: true of
    /// `x` when the theory proves the context applied to the formula coded by
    /// `x`. Requires a backend with decidable provability. Returns the symbol.
    pub fn register_pr_context(
        &mut self,
        theory: &Theory,
        index: usize,
        context: &PropTemplate,
    ) -> Result<String, TheoryError> {
        if theory.proves_decided(&Code::from(0u64)).is_none() {
            return Err(TheoryError::UnsupportedBackend(
                "provability-context atoms need decidable provability (finite or enumerated backend)"
                    .to_string(),
            ));
        }
        let symbol = format!("prctx_{}_{}", theory.name(), index);
        let t = theory.clone();
        let ctx = context.clone();
        let semantics: SemFn = Arc::new(move |args: &[BigUint]| {
            let code = Code::from(args[0].clone());
            match coding::context_transform(&ctx, &code) {
                Ok(transformed) => t.proves_decided(&transformed).unwrap_or(false),
                Err(_) => false,
            }
        });
        let support: SupportFn = Arc::new(|_, _| None);
        self.register(
            &symbol,
            RegisteredAtom {
                arity: 1,
                class: HierarchyClass::Sigma(1),
                semantics,
                support,
            },
        )?;
        Ok(symbol)
    }
}

impl Theory {
    /// The code of the theorem at index `y`, if any, without decoding the
    /// whole formula where the backend stores codes directly.
    fn code_of_theorem_at(&self, y: &BigUint) -> Option<Code> {
        match &self.backend {
            Backend::Finite(f) => usize::try_from(y).ok().and_then(|i| f.codes.get(i)).cloned(),
            Backend::Enumerated(e) => {
                let k = BigUint::from(e.prefix_codes.len());
                if y < &k {
                    let i = usize::try_from(y).expect("below prefix length");
                    Some(e.prefix_codes[i].clone())
                } else {
                    let i = y - &k;
                    e.generator.admits(&i).then(|| Code::from(i))
                }
            }
            Backend::Calculus(c) => {
                let lines = coding::decode_list(y)?;
                if !lines.is_empty() && c.valid_derivation(&lines) {
                    Some(Code::from(lines.last().expect("nonempty").clone()))
                } else {
                    None
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Theory definition files
// ---------------------------------------------------------------------------

/// Parses the line-oriented theory file format:
///
/// ```text
/// theory <name> finite
/// <sentence>
/// ...
/// ```
///
/// Enumerated backends name a generator on the header line
/// (`theory <name> enumerated all_sentences`) and list optional prefix
/// sentences below; calculus backends list axioms. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_theory_file(text: &str) -> Result<Theory, TheoryError> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut sentences: Vec<(usize, Formula)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let words: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if words.first().map(String::as_str) != Some("theory") {
                return Err(TheoryError::File {
                    line: lineno + 1,
                    message: "expected header: theory <name> finite|enumerated|calculus".into(),
                });
            }
            header = Some((lineno + 1, words));
            continue;
        }
        let f = parse::parse(line).map_err(|e| TheoryError::File {
            line: lineno + 1,
            message: e.to_string(),
        })?;
        if !f.is_sentence() {
            return Err(TheoryError::File {
                line: lineno + 1,
                message: format!("'{line}' is not a sentence"),
            });
        }
        sentences.push((lineno + 1, f));
    }
    let (header_line, words) = header.ok_or(TheoryError::File {
        line: 0,
        message: "empty theory file".into(),
    })?;
    let bad_header = |message: &str| TheoryError::File {
        line: header_line,
        message: message.to_string(),
    };
    if words.len() < 3 {
        return Err(bad_header("expected: theory <name> finite|enumerated|calculus"));
    }
    let name = &words[1];
    let sentences: Vec<Formula> = sentences.into_iter().map(|(_, f)| f).collect();
    match words[2].as_str() {
        "finite" => {
            if words.len() != 3 {
                return Err(bad_header("finite header takes no generator"));
            }
            Theory::finite(name, sentences)
        }
        "enumerated" => {
            if words.len() != 4 {
                return Err(bad_header(
                    "enumerated header: theory <name> enumerated <generator>",
                ));
            }
            let generator = Generator::by_name(&words[3])
                .ok_or_else(|| TheoryError::UnknownGenerator(words[3].clone()))?;
            Theory::enumerated(name, generator, sentences)
        }
        "calculus" => {
            if words.len() != 3 {
                return Err(bad_header("calculus header takes no generator"));
            }
            Theory::calculus(name, sentences)
        }
        other => Err(bad_header(&format!(
            "unknown backend '{other}' (expected finite, enumerated, or calculus)"
        ))),
    }
}
