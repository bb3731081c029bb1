//! Fuel-bounded evaluation of sentences in the standard model, with
//! certificates, plus soundness audits and independence probes.
//!
//! The evaluator never guesses: `True` and `False` verdicts are sound, and
//! `Unknown` is returned whenever neither an exhaustive analysis nor the
//! fuel-bounded search decides a quantifier. Exact decisions beyond the
//! search bound come from the finite-support analysis in [`support`]; the
//! raw search ascends from 0, so certificates carry minimal decided
//! witnesses and counterexamples.

pub mod poly;
pub mod support;

use crate::coding::{self, complement_code, encode_formula, CodingError};
use crate::diagonal::FixedPointReport;
use crate::formula::classify::{classify, ClassifyError};
use crate::formula::{fresh_var, Formula, HierarchyClass, Term};
use crate::report::Kv;
use crate::theory::{rosser_pr_formula, DefinedAtomRegistry, Theory};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use support::formula_support;
use thiserror::Error;

pub const DEFAULT_WITNESS_BOUND: u64 = 10_000;
pub const DEFAULT_DEPTH_BOUND: u32 = 64;

/// Search budget: `witness_bound` caps the values tried per unbounded
/// quantifier (and the width of exact bounded iteration), `depth_bound`
/// caps quantifier nesting during evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    witness_bound: u64,
    depth_bound: u32,
}

impl Fuel {
    pub fn new(witness_bound: u64, depth_bound: u32) -> Result<Fuel, EvalError> {
        if witness_bound == 0 || depth_bound == 0 {
            return Err(EvalError::InvalidFuel);
        }
        Ok(Fuel {
            witness_bound,
            depth_bound,
        })
    }

    pub fn witness_bound(&self) -> u64 {
        self.witness_bound
    }

    pub fn depth_bound(&self) -> u32 {
        self.depth_bound
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel {
            witness_bound: DEFAULT_WITNESS_BOUND,
            depth_bound: DEFAULT_DEPTH_BOUND,
        }
    }
}

/// Decisive quantifier bindings along the decided path: witnesses of
/// existential steps and counterexamples of universal steps. Binder names
/// are made unique before evaluation, so the map is unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub bindings: BTreeMap<String, BigUint>,
}

impl Certificate {
    fn merge(mut self, other: Certificate) -> Certificate {
        self.bindings.extend(other.bindings);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownReason {
    /// Quantifier variables entered on the way to the failure.
    pub path: Vec<String>,
    pub message: String,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{} (at {})", self.message, self.path.join("/"))
        }
    }
}

/// Three-valued evaluation outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruthValue {
    True(Certificate),
    False(Certificate),
    Unknown(UnknownReason),
}

impl TruthValue {
    pub fn decided(&self) -> Option<bool> {
        match self {
            TruthValue::True(_) => Some(true),
            TruthValue::False(_) => Some(false),
            TruthValue::Unknown(_) => None,
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, TruthValue::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TruthValue::False(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TruthValue::Unknown(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            TruthValue::True(c) | TruthValue::False(c) => Some(c),
            TruthValue::Unknown(_) => None,
        }
    }

    pub fn to_kv(&self) -> Kv {
        let mut kv = Kv::node();
        match self {
            TruthValue::True(c) => {
                kv.push("verdict", Kv::leaf("true"));
                kv.push("certificate", certificate_kv(c));
            }
            TruthValue::False(c) => {
                kv.push("verdict", Kv::leaf("false"));
                kv.push("certificate", certificate_kv(c));
            }
            TruthValue::Unknown(u) => {
                kv.push("verdict", Kv::leaf("unknown"));
                kv.push("reason", Kv::leaf(u));
            }
        }
        kv
    }
}

fn certificate_kv(c: &Certificate) -> Kv {
    let mut kv = Kv::node();
    for (k, v) in &c.bindings {
        kv.push(k.clone(), Kv::leaf(v));
    }
    kv
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::True(_) => write!(f, "true"),
            TruthValue::False(_) => write!(f, "false"),
            TruthValue::Unknown(_) => write!(f, "unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom '{0}' is not registered")]
    UnregisteredAtom(String),
    #[error("atom '{symbol}' expects {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("propositional variables cannot be evaluated in the standard model")]
    PropVarPresent,
    #[error("not a sentence: free variables {0:?}")]
    OpenFormula(Vec<String>),
    #[error("fuel bounds must be positive")]
    InvalidFuel,
    #[error("expected a {required} sentence, found {actual}")]
    ClassTooHigh {
        required: HierarchyClass,
        actual: HierarchyClass,
    },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Coding(#[from] CodingError),
}

pub(crate) struct EvalCtx<'a> {
    pub fuel: &'a Fuel,
    pub registry: &'a DefinedAtomRegistry,
}

/// Evaluates a sentence in the standard model. All defined atoms must be
/// registered. `True`/`False` are exact; `Unknown` reports where the fuel
/// ran out.
pub fn eval(
    f: &Formula,
    fuel: &Fuel,
    registry: &DefinedAtomRegistry,
) -> Result<TruthValue, EvalError> {
    validate_sentence(f, registry)?;
    let renamed = rename_bound_unique(f);
    let ctx = EvalCtx { fuel, registry };
    Ok(eval_rec(&renamed, fuel.depth_bound, &ctx, &mut Vec::new()))
}

/// Witness search for an (at most) `sigma1` sentence up to `bound`.
pub fn eval_sigma1(
    f: &Formula,
    bound: u64,
    registry: &DefinedAtomRegistry,
) -> Result<TruthValue, EvalError> {
    let actual = classify(f)?;
    if !actual.le(&HierarchyClass::Sigma(1)) {
        return Err(EvalError::ClassTooHigh {
            required: HierarchyClass::Sigma(1),
            actual,
        });
    }
    eval(f, &Fuel::new(bound, DEFAULT_DEPTH_BOUND)?, registry)
}

fn validate_sentence(f: &Formula, registry: &DefinedAtomRegistry) -> Result<(), EvalError> {
    if f.has_prop_vars() {
        return Err(EvalError::PropVarPresent);
    }
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(EvalError::OpenFormula(free.into_iter().collect()));
    }
    validate_atoms(f, registry)
}

fn validate_atoms(f: &Formula, registry: &DefinedAtomRegistry) -> Result<(), EvalError> {
    match f {
        Formula::DefinedAtom { symbol, args, .. } => {
            let atom = registry
                .get(symbol)
                .ok_or_else(|| EvalError::UnregisteredAtom(symbol.clone()))?;
            if atom.arity != args.len() {
                return Err(EvalError::ArityMismatch {
                    symbol: symbol.clone(),
                    expected: atom.arity,
                    found: args.len(),
                });
            }
            Ok(())
        }
        Formula::Eq(_, _) | Formula::PropVar(_) => Ok(()),
        Formula::Not(g) => validate_atoms(g, registry),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            validate_atoms(l, registry)?;
            validate_atoms(r, registry)
        }
        Formula::Forall(_, g)
        | Formula::Exists(_, g)
        | Formula::BForall(_, _, g)
        | Formula::BExists(_, _, g) => validate_atoms(g, registry),
    }
}

/// Renames binders so every bound variable is distinct from every other and
/// from the free variables. Deterministic, so re-running it on the same
/// formula yields the same names; certificates refer to these names.
fn rename_bound_unique(f: &Formula) -> Formula {
    fn go(f: &Formula, used: &mut BTreeSet<String>) -> Formula {
        let rebind = |v: &str, body: &Formula, used: &mut BTreeSet<String>| {
            let (name, body) = if used.contains(v) {
                let mut avoid = used.clone();
                avoid.extend(body.all_vars());
                let fresh = fresh_var(v, &avoid);
                let renamed = body.substitute(v, &Term::var(fresh.clone()));
                (fresh, renamed)
            } else {
                (v.to_string(), body.clone())
            };
            used.insert(name.clone());
            (name, body)
        };
        match f {
            Formula::Forall(v, body) => {
                let (name, body) = rebind(v, body, used);
                Formula::Forall(name, Box::new(go(&body, used)))
            }
            Formula::Exists(v, body) => {
                let (name, body) = rebind(v, body, used);
                Formula::Exists(name, Box::new(go(&body, used)))
            }
            Formula::BForall(v, bound, body) => {
                let (name, body) = rebind(v, body, used);
                Formula::BForall(name, bound.clone(), Box::new(go(&body, used)))
            }
            Formula::BExists(v, bound, body) => {
                let (name, body) = rebind(v, body, used);
                Formula::BExists(name, bound.clone(), Box::new(go(&body, used)))
            }
            Formula::Not(g) => Formula::not(go(g, used)),
            Formula::And(l, r) => {
                let l = go(l, used);
                Formula::and(l, go(r, used))
            }
            Formula::Or(l, r) => {
                let l = go(l, used);
                Formula::or(l, go(r, used))
            }
            Formula::Implies(l, r) => {
                let l = go(l, used);
                Formula::implies(l, go(r, used))
            }
            Formula::Iff(l, r) => {
                let l = go(l, used);
                Formula::iff(l, go(r, used))
            }
            Formula::Eq(_, _) | Formula::DefinedAtom { .. } | Formula::PropVar(_) => f.clone(),
        }
    }
    let mut used = f.free_vars();
    go(f, &mut used)
}

fn term_value(t: &Term) -> BigUint {
    t.value_closed()
        .expect("evaluation reaches terms only after closing substitution")
}

pub(crate) fn eval_rec(
    f: &Formula,
    depth: u32,
    ctx: &EvalCtx<'_>,
    path: &mut Vec<String>,
) -> TruthValue {
    match f {
        Formula::Eq(l, r) => {
            if term_value(l) == term_value(r) {
                TruthValue::True(Certificate::default())
            } else {
                TruthValue::False(Certificate::default())
            }
        }
        Formula::DefinedAtom { symbol, args, .. } => {
            let vals: Vec<BigUint> = args.iter().map(term_value).collect();
            let atom = ctx.registry.get(symbol).expect("validated before eval");
            if atom.eval(&vals) {
                TruthValue::True(Certificate::default())
            } else {
                TruthValue::False(Certificate::default())
            }
        }
        Formula::PropVar(_) => unreachable!("validated before eval"),
        Formula::Not(g) => match eval_rec(g, depth, ctx, path) {
            TruthValue::True(c) => TruthValue::False(c),
            TruthValue::False(c) => TruthValue::True(c),
            unknown => unknown,
        },
        Formula::And(l, r) => match eval_rec(l, depth, ctx, path) {
            TruthValue::False(c) => TruthValue::False(c),
            TruthValue::True(cl) => match eval_rec(r, depth, ctx, path) {
                TruthValue::True(cr) => TruthValue::True(cl.merge(cr)),
                TruthValue::False(cr) => TruthValue::False(cr),
                unknown => unknown,
            },
            TruthValue::Unknown(u) => match eval_rec(r, depth, ctx, path) {
                TruthValue::False(cr) => TruthValue::False(cr),
                _ => TruthValue::Unknown(u),
            },
        },
        Formula::Or(l, r) => match eval_rec(l, depth, ctx, path) {
            TruthValue::True(c) => TruthValue::True(c),
            TruthValue::False(cl) => match eval_rec(r, depth, ctx, path) {
                TruthValue::False(cr) => TruthValue::False(cl.merge(cr)),
                TruthValue::True(cr) => TruthValue::True(cr),
                unknown => unknown,
            },
            TruthValue::Unknown(u) => match eval_rec(r, depth, ctx, path) {
                TruthValue::True(cr) => TruthValue::True(cr),
                _ => TruthValue::Unknown(u),
            },
        },
        Formula::Implies(l, r) => match eval_rec(l, depth, ctx, path) {
            TruthValue::False(c) => TruthValue::True(c),
            TruthValue::True(cl) => match eval_rec(r, depth, ctx, path) {
                TruthValue::True(cr) => TruthValue::True(cr),
                TruthValue::False(cr) => TruthValue::False(cl.merge(cr)),
                unknown => unknown,
            },
            TruthValue::Unknown(u) => match eval_rec(r, depth, ctx, path) {
                TruthValue::True(cr) => TruthValue::True(cr),
                _ => TruthValue::Unknown(u),
            },
        },
        Formula::Iff(l, r) => {
            let lv = eval_rec(l, depth, ctx, path);
            let rv = eval_rec(r, depth, ctx, path);
            match (lv, rv) {
                (TruthValue::True(a), TruthValue::True(b)) => TruthValue::True(a.merge(b)),
                (TruthValue::False(a), TruthValue::False(b)) => TruthValue::True(a.merge(b)),
                (TruthValue::True(a), TruthValue::False(b))
                | (TruthValue::False(a), TruthValue::True(b)) => TruthValue::False(a.merge(b)),
                (TruthValue::Unknown(u), _) | (_, TruthValue::Unknown(u)) => {
                    TruthValue::Unknown(u)
                }
            }
        }
        Formula::Forall(v, body) => with_quantifier(v, depth, ctx, path, |depth, ctx, path| {
            decide_unbounded(true, v, body, depth, ctx, path)
        }),
        Formula::Exists(v, body) => with_quantifier(v, depth, ctx, path, |depth, ctx, path| {
            decide_unbounded(false, v, body, depth, ctx, path)
        }),
        Formula::BForall(v, bound, body) => {
            with_quantifier(v, depth, ctx, path, |depth, ctx, path| {
                decide_bounded(true, v, &term_value(bound), body, depth, ctx, path)
            })
        }
        Formula::BExists(v, bound, body) => {
            with_quantifier(v, depth, ctx, path, |depth, ctx, path| {
                decide_bounded(false, v, &term_value(bound), body, depth, ctx, path)
            })
        }
    }
}

fn with_quantifier<'a>(
    v: &str,
    depth: u32,
    ctx: &EvalCtx<'a>,
    path: &mut Vec<String>,
    run: impl FnOnce(u32, &EvalCtx<'a>, &mut Vec<String>) -> TruthValue,
) -> TruthValue {
    if depth == 0 {
        return TruthValue::Unknown(UnknownReason {
            path: path.clone(),
            message: format!("depth bound exhausted at quantifier over {v}"),
        });
    }
    path.push(v.to_string());
    let result = run(depth - 1, ctx, path);
    path.pop();
    result
}

fn eval_at(
    body: &Formula,
    v: &str,
    value: &BigUint,
    depth: u32,
    ctx: &EvalCtx<'_>,
    path: &mut Vec<String>,
) -> TruthValue {
    let inst = body.substitute(v, &Term::Num(value.clone()));
    eval_rec(&inst, depth, ctx, path)
}

fn bind(mut c: Certificate, v: &str, value: &BigUint) -> Certificate {
    c.bindings.insert(v.to_string(), value.clone());
    c
}

/// Decides `forall v. body` or `exists v. body`. Tries the finite-support
/// analysis first (exact at any witness size), then falls back to the
/// ascending fuel-bounded search, which can only decide in the refutable
/// direction.
fn decide_unbounded(
    universal: bool,
    v: &str,
    body: &Formula,
    depth: u32,
    ctx: &EvalCtx<'_>,
    path: &mut Vec<String>,
) -> TruthValue {
    if let Some(sup) = formula_support(body, v, depth, ctx) {
        let exceptions = sup.sorted_exceptions();
        if sup.limit == universal {
            // The limit agrees with the quantifier: only exception points can
            // refute (universal) or witness-hunting is pointless outside them
            // (existential with false limit). Check each exception.
            let mut pending: Option<UnknownReason> = None;
            for e in &exceptions {
                match eval_at(body, v, e, depth, ctx, path) {
                    TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, e)),
                    TruthValue::False(c) if universal => return TruthValue::False(bind(c, v, e)),
                    TruthValue::Unknown(u) => pending = pending.or(Some(u)),
                    _ => {}
                }
            }
            match pending {
                Some(u) => TruthValue::Unknown(u),
                None => {
                    if universal {
                        TruthValue::True(Certificate::default())
                    } else {
                        TruthValue::False(Certificate::default())
                    }
                }
            }
        } else {
            // The limit opposes the quantifier: almost every point decides it.
            // Walk upward for the least certified witness/counterexample,
            // evaluating exception points as they come.
            let mut next_free = BigUint::zero();
            for e in &exceptions {
                if *e > next_free {
                    break;
                }
                match eval_at(body, v, e, depth, ctx, path) {
                    TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, e)),
                    TruthValue::False(c) if universal => return TruthValue::False(bind(c, v, e)),
                    _ => {}
                }
                next_free = e + 1u32;
            }
            let cert = bind(Certificate::default(), v, &next_free);
            if universal {
                TruthValue::False(cert)
            } else {
                TruthValue::True(cert)
            }
        }
    } else {
        let mut pending: Option<UnknownReason> = None;
        for k in 0..ctx.fuel.witness_bound {
            let kv = BigUint::from(k);
            match eval_at(body, v, &kv, depth, ctx, path) {
                TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, &kv)),
                TruthValue::False(c) if universal => return TruthValue::False(bind(c, v, &kv)),
                TruthValue::Unknown(u) => pending = pending.or(Some(u)),
                _ => {}
            }
        }
        TruthValue::Unknown(pending.unwrap_or_else(|| UnknownReason {
            path: path.clone(),
            message: format!(
                "{} search over {v} exhausted the witness bound {}",
                if universal { "counterexample" } else { "witness" },
                ctx.fuel.witness_bound
            ),
        }))
    }
}

/// Decides `forall v < bound. body` or `exists v < bound. body`. Small
/// ranges are iterated exactly; larger ones fall back to finite-support
/// analysis restricted to the range.
fn decide_bounded(
    universal: bool,
    v: &str,
    bound: &BigUint,
    body: &Formula,
    depth: u32,
    ctx: &EvalCtx<'_>,
    path: &mut Vec<String>,
) -> TruthValue {
    if let Ok(small) = u64::try_from(bound) {
        if small <= ctx.fuel.witness_bound {
            let mut pending: Option<UnknownReason> = None;
            for k in 0..small {
                let kv = BigUint::from(k);
                match eval_at(body, v, &kv, depth, ctx, path) {
                    TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, &kv)),
                    TruthValue::False(c) if universal => {
                        return TruthValue::False(bind(c, v, &kv))
                    }
                    TruthValue::Unknown(u) => pending = pending.or(Some(u)),
                    _ => {}
                }
            }
            return match pending {
                Some(u) => TruthValue::Unknown(u),
                None => {
                    if universal {
                        TruthValue::True(Certificate::default())
                    } else {
                        TruthValue::False(Certificate::default())
                    }
                }
            };
        }
    }
    if let Some(sup) = formula_support(body, v, depth, ctx) {
        let in_range: Vec<BigUint> = sup
            .sorted_exceptions()
            .into_iter()
            .filter(|e| e < bound)
            .collect();
        if sup.limit == universal {
            let mut pending: Option<UnknownReason> = None;
            for e in &in_range {
                match eval_at(body, v, e, depth, ctx, path) {
                    TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, e)),
                    TruthValue::False(c) if universal => return TruthValue::False(bind(c, v, e)),
                    TruthValue::Unknown(u) => pending = pending.or(Some(u)),
                    _ => {}
                }
            }
            match pending {
                Some(u) => TruthValue::Unknown(u),
                None => {
                    if universal {
                        TruthValue::True(Certificate::default())
                    } else {
                        TruthValue::False(Certificate::default())
                    }
                }
            }
        } else {
            let mut pending: Option<UnknownReason> = None;
            let mut next_free = BigUint::zero();
            for e in &in_range {
                if *e > next_free {
                    break;
                }
                match eval_at(body, v, e, depth, ctx, path) {
                    TruthValue::True(c) if !universal => return TruthValue::True(bind(c, v, e)),
                    TruthValue::False(c) if universal => return TruthValue::False(bind(c, v, e)),
                    TruthValue::Unknown(u) => pending = pending.or(Some(u)),
                    _ => {}
                }
                next_free = e + 1u32;
            }
            if next_free < *bound {
                let cert = bind(Certificate::default(), v, &next_free);
                if universal {
                    TruthValue::False(cert)
                } else {
                    TruthValue::True(cert)
                }
            } else {
                // every point of the range was an exception and none decided
                match pending {
                    Some(u) => TruthValue::Unknown(u),
                    None => {
                        if universal {
                            TruthValue::True(Certificate::default())
                        } else {
                            TruthValue::False(Certificate::default())
                        }
                    }
                }
            }
        }
    } else {
        TruthValue::Unknown(UnknownReason {
            path: path.clone(),
            message: format!(
                "bounded quantifier over {v} has bound {bound} beyond the witness bound {} and no finite-support analysis",
                ctx.fuel.witness_bound
            ),
        })
    }
}

// ---------------------------------------------------------------------------
// Certificate replay
// ---------------------------------------------------------------------------

/// Re-checks a decided verdict. Certified bindings override search at their
/// quantifiers: the bound instance alone must decide the quantifier in the
/// certified direction, so a tampered witness or counterexample fails.
/// Quantifiers without a binding are re-derived by exact means (closed
/// arithmetic, registered atoms, bounded iteration, finite-support analysis)
/// plus the same ascending bounded scan in the refutable direction, which
/// can only confirm, never conclude, the unrefutable one. Returns whether
/// the verdict is reproduced; `Unknown` verdicts vacuously pass.
pub fn replay_certificate(
    f: &Formula,
    verdict: &TruthValue,
    fuel: &Fuel,
    registry: &DefinedAtomRegistry,
) -> Result<bool, EvalError> {
    validate_sentence(f, registry)?;
    let (expected, cert) = match verdict {
        TruthValue::True(c) => (true, c),
        TruthValue::False(c) => (false, c),
        TruthValue::Unknown(_) => return Ok(true),
    };
    let renamed = rename_bound_unique(f);
    let ctx = EvalCtx { fuel, registry };
    Ok(replay_rec(&renamed, &cert.bindings, fuel.depth_bound, &ctx) == Some(expected))
}

fn kleene_not(v: Option<bool>) -> Option<bool> {
    v.map(|b| !b)
}

fn kleene_and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn kleene_or(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    kleene_not(kleene_and(kleene_not(a), kleene_not(b)))
}

fn replay_rec(
    f: &Formula,
    bindings: &BTreeMap<String, BigUint>,
    depth: u32,
    ctx: &EvalCtx<'_>,
) -> Option<bool> {
    match f {
        Formula::Eq(l, r) => Some(term_value(l) == term_value(r)),
        Formula::DefinedAtom { symbol, args, .. } => {
            let vals: Vec<BigUint> = args.iter().map(term_value).collect();
            Some(ctx.registry.get(symbol)?.eval(&vals))
        }
        Formula::PropVar(_) => None,
        Formula::Not(g) => kleene_not(replay_rec(g, bindings, depth, ctx)),
        Formula::And(l, r) => kleene_and(
            replay_rec(l, bindings, depth, ctx),
            replay_rec(r, bindings, depth, ctx),
        ),
        Formula::Or(l, r) => kleene_or(
            replay_rec(l, bindings, depth, ctx),
            replay_rec(r, bindings, depth, ctx),
        ),
        Formula::Implies(l, r) => kleene_or(
            kleene_not(replay_rec(l, bindings, depth, ctx)),
            replay_rec(r, bindings, depth, ctx),
        ),
        Formula::Iff(l, r) => {
            let a = replay_rec(l, bindings, depth, ctx)?;
            let b = replay_rec(r, bindings, depth, ctx)?;
            Some(a == b)
        }
        Formula::Forall(v, body) => {
            if depth == 0 {
                return None;
            }
            if let Some(val) = bindings.get(v) {
                let inst = body.substitute(v, &Term::Num(val.clone()));
                match replay_rec(&inst, bindings, depth - 1, ctx) {
                    Some(false) => Some(false),
                    _ => None,
                }
            } else {
                replay_supported(true, v, body, None, bindings, depth - 1, ctx)
            }
        }
        Formula::Exists(v, body) => {
            if depth == 0 {
                return None;
            }
            if let Some(val) = bindings.get(v) {
                let inst = body.substitute(v, &Term::Num(val.clone()));
                match replay_rec(&inst, bindings, depth - 1, ctx) {
                    Some(true) => Some(true),
                    _ => None,
                }
            } else {
                replay_supported(false, v, body, None, bindings, depth - 1, ctx)
            }
        }
        Formula::BForall(v, bound, body) => {
            replay_bounded(true, v, bound, body, bindings, depth, ctx)
        }
        Formula::BExists(v, bound, body) => {
            replay_bounded(false, v, bound, body, bindings, depth, ctx)
        }
    }
}

fn replay_bounded(
    universal: bool,
    v: &str,
    bound: &Term,
    body: &Formula,
    bindings: &BTreeMap<String, BigUint>,
    depth: u32,
    ctx: &EvalCtx<'_>,
) -> Option<bool> {
    if depth == 0 {
        return None;
    }
    let bound = term_value(bound);
    if let Some(val) = bindings.get(v) {
        if *val >= bound {
            return None;
        }
        let inst = body.substitute(v, &Term::Num(val.clone()));
        let got = replay_rec(&inst, bindings, depth - 1, ctx);
        return match (universal, got) {
            (true, Some(false)) => Some(false),
            (false, Some(true)) => Some(true),
            _ => None,
        };
    }
    if let Ok(small) = u64::try_from(&bound) {
        if small <= ctx.fuel.witness_bound {
            let mut acc = Some(universal);
            for k in 0..small {
                let inst = body.substitute(v, &Term::Num(BigUint::from(k)));
                let got = replay_rec(&inst, bindings, depth - 1, ctx);
                match (universal, got) {
                    (true, Some(false)) => return Some(false),
                    (false, Some(true)) => return Some(true),
                    (_, None) => acc = None,
                    _ => {}
                }
            }
            return acc;
        }
    }
    replay_supported(universal, v, body, Some(&bound), bindings, depth - 1, ctx)
}

/// Re-derivation for a quantifier with no certified binding, optionally
/// restricted to `[0, range)`: finite-support analysis when available,
/// otherwise a bounded scan that can only decide in the refutable direction.
fn replay_supported(
    universal: bool,
    v: &str,
    body: &Formula,
    range: Option<&BigUint>,
    bindings: &BTreeMap<String, BigUint>,
    depth: u32,
    ctx: &EvalCtx<'_>,
) -> Option<bool> {
    let Some(sup) = formula_support(body, v, depth, ctx) else {
        for k in 0..ctx.fuel.witness_bound {
            let kv = BigUint::from(k);
            if let Some(b) = range {
                if &kv >= b {
                    break;
                }
            }
            let inst = body.substitute(v, &Term::Num(kv));
            match (universal, replay_rec(&inst, bindings, depth, ctx)) {
                (true, Some(false)) => return Some(false),
                (false, Some(true)) => return Some(true),
                _ => {}
            }
        }
        return None;
    };
    let exceptions: Vec<BigUint> = sup
        .sorted_exceptions()
        .into_iter()
        .filter(|e| range.map(|b| e < b).unwrap_or(true))
        .collect();
    if sup.limit == universal {
        // exceptions are the only candidates against the quantifier
        let mut acc = Some(universal);
        for e in &exceptions {
            let inst = body.substitute(v, &Term::Num(e.clone()));
            let got = replay_rec(&inst, bindings, depth, ctx);
            match (universal, got) {
                (true, Some(false)) => return Some(false),
                (false, Some(true)) => return Some(true),
                (_, None) => acc = None,
                _ => {}
            }
        }
        acc
    } else {
        // the limit decides the quantifier if any point outside the
        // exceptions lies in range
        let covers_range = match range {
            Some(b) => BigUint::from(exceptions.len()) >= *b,
            None => false,
        };
        if covers_range {
            let mut acc = Some(universal);
            for e in &exceptions {
                let inst = body.substitute(v, &Term::Num(e.clone()));
                let got = replay_rec(&inst, bindings, depth, ctx);
                match (universal, got) {
                    (true, Some(false)) => return Some(false),
                    (false, Some(true)) => return Some(true),
                    (_, None) => acc = None,
                    _ => {}
                }
            }
            acc
        } else {
            Some(!universal)
        }
    }
}

// ---------------------------------------------------------------------------
// Fixed-point checking
// ---------------------------------------------------------------------------

/// Per-clause outcome of checking a diagonal fixed point against its defining
/// predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointCheck {
    /// The self-reference identity holds exactly (diagonalizing the template
    /// code yields the sentence code, recomputed from scratch).
    pub identity_ok: bool,
    pub theta_verdict: TruthValue,
    pub psi_at_theta_verdict: TruthValue,
    /// One side true and the other false. Must never happen.
    pub contradictory: bool,
    /// `Some(agree)` when both sides are decided.
    pub agreement: Option<bool>,
}

impl FixedPointCheck {
    pub fn to_kv(&self) -> Kv {
        Kv::node()
            .with("identity", Kv::leaf(if self.identity_ok { "PASS" } else { "FAIL" }))
            .with("theta", self.theta_verdict.to_kv())
            .with("psi_at_theta", self.psi_at_theta_verdict.to_kv())
            .with("contradictory", Kv::leaf(self.contradictory))
            .with(
                "agreement",
                Kv::leaf(match self.agreement {
                    Some(true) => "agree",
                    Some(false) => "disagree",
                    None => "undecided",
                }),
            )
    }
}

/// Checks a fixed-point report: (a) the self-reference identity, exactly;
/// (b) the sentence and its predicate instance are never contradictory;
/// (c) when both are decided they agree.
pub fn check_fixed_point(
    report: &FixedPointReport,
    psi: &Formula,
    fuel: &Fuel,
    registry: &DefinedAtomRegistry,
) -> Result<FixedPointCheck, EvalError> {
    let recomputed = coding::diag(&report.alpha_code)
        .map(|d| d == report.theta_code)
        .unwrap_or(false);
    let identity_ok = recomputed
        && report.diag_of_alpha == report.theta_code
        && encode_formula(&report.theta)? == report.theta_code;

    let free: Vec<String> = psi.free_vars().into_iter().collect();
    let psi_at_theta = match free.as_slice() {
        [x] => psi.substitute(x, &coding::goedel_numeral(&report.theta)?),
        _ => {
            return Err(EvalError::OpenFormula(free));
        }
    };
    let theta_verdict = eval(&report.theta, fuel, registry)?;
    let psi_at_theta_verdict = eval(&psi_at_theta, fuel, registry)?;
    let contradictory = matches!(
        (theta_verdict.decided(), psi_at_theta_verdict.decided()),
        (Some(a), Some(b)) if a != b
    );
    let agreement = match (theta_verdict.decided(), psi_at_theta_verdict.decided()) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(FixedPointCheck {
        identity_ok,
        theta_verdict,
        psi_at_theta_verdict,
        contradictory,
        agreement,
    })
}

// ---------------------------------------------------------------------------
// Soundness audit
// ---------------------------------------------------------------------------

/// Outcome of auditing a theory's provable sentences in a class against the
/// standard model. A violation is a provable sentence of the class that
/// evaluates false; undecided sentences are reported separately and never
/// count as violations.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub theory: String,
    pub gamma: HierarchyClass,
    pub proof_bound: u64,
    pub fuel: Fuel,
    /// Distinct provable sentences of the class, in order of least proof
    /// index, with their verdicts.
    pub verdicts: Vec<(Formula, TruthValue)>,
    /// Indices into `verdicts` with a false verdict.
    pub violations: Vec<usize>,
    /// Indices into `verdicts` with an unknown verdict.
    pub unknowns: Vec<usize>,
}

impl SoundnessReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_kv(&self) -> Kv {
        let mut kv = Kv::node();
        kv.push("theory", Kv::leaf(&self.theory));
        kv.push("class", Kv::leaf(self.gamma));
        kv.push("proof_bound", Kv::leaf(self.proof_bound));
        kv.push(
            "fuel",
            Kv::node()
                .with("witness_bound", Kv::leaf(self.fuel.witness_bound))
                .with("depth_bound", Kv::leaf(self.fuel.depth_bound)),
        );
        let mut verdicts = Kv::node();
        for (i, (sentence, verdict)) in self.verdicts.iter().enumerate() {
            verdicts.push(
                format!("{i}"),
                Kv::node()
                    .with("sentence", Kv::leaf(sentence))
                    .with("verdict", Kv::leaf(verdict)),
            );
        }
        kv.push("verdicts", verdicts);
        kv.push(
            "violations",
            Kv::leaf(
                self.violations
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        );
        kv.push(
            "unknowns",
            Kv::leaf(
                self.unknowns
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        );
        kv.push("passes", Kv::leaf(self.passes()));
        kv
    }
}

/// Evaluates every distinct sentence provable with proof index at most
/// `proof_bound` whose class is at most `gamma`, collecting false verdicts
/// as violations.
pub fn soundness_audit(
    theory: &Theory,
    gamma: HierarchyClass,
    proof_bound: u64,
    fuel: &Fuel,
    registry: &DefinedAtomRegistry,
) -> Result<SoundnessReport, EvalError> {
    let mut seen: BTreeSet<BigUint> = BTreeSet::new();
    let mut verdicts = Vec::new();
    let mut violations = Vec::new();
    let mut unknowns = Vec::new();
    for y in 0..=proof_bound {
        let Some(sentence) = theory.theorem_at(&BigUint::from(y)) else {
            continue;
        };
        let code = encode_formula(&sentence)?.into_value();
        if !seen.insert(code) {
            continue;
        }
        if !classify(&sentence)?.le(&gamma) {
            continue;
        }
        let verdict = eval(&sentence, fuel, registry)?;
        let index = verdicts.len();
        match &verdict {
            TruthValue::False(_) => violations.push(index),
            TruthValue::Unknown(_) => unknowns.push(index),
            TruthValue::True(_) => {}
        }
        verdicts.push((sentence, verdict));
    }
    Ok(SoundnessReport {
        theory: theory.name().to_string(),
        gamma,
        proof_bound,
        fuel: *fuel,
        verdicts,
        violations,
        unknowns,
    })
}

// ---------------------------------------------------------------------------
// Independence probe and Rosser case analysis
// ---------------------------------------------------------------------------

/// Result of scanning proof indices for a sentence and its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Least scanned index proving the sentence.
    ProofFound { index: u64 },
    /// Least scanned index proving the negation.
    RefutationFound { index: u64 },
    /// Nothing within the bound; `exact` records whether the scan was
    /// exhaustive (finite backends only).
    NeitherWithinBound { exact: bool },
}

impl ProbeOutcome {
    pub fn to_kv(&self) -> Kv {
        match self {
            ProbeOutcome::ProofFound { index } => Kv::node()
                .with("outcome", Kv::leaf("proof_found"))
                .with("index", Kv::leaf(index)),
            ProbeOutcome::RefutationFound { index } => Kv::node()
                .with("outcome", Kv::leaf("refutation_found"))
                .with("index", Kv::leaf(index)),
            ProbeOutcome::NeitherWithinBound { exact } => Kv::node()
                .with("outcome", Kv::leaf("neither_within_bound"))
                .with("exact", Kv::leaf(exact)),
        }
    }
}

/// Whether scanning indices `0..=proof_bound` exhausts a finite theory.
fn scan_is_exact(theory: &Theory, proof_bound: u64) -> bool {
    theory
        .finite_theorems()
        .map(|t| (t.len() as u64) <= proof_bound.saturating_add(1))
        .unwrap_or(false)
}

/// Scans proof indices up to `proof_bound` for the sentence and its negation.
/// The first hit in ascending order wins; for finite theories a `Neither`
/// verdict is exact once the scan covers the whole list.
pub fn independence_probe(
    theory: &Theory,
    phi: &Formula,
    proof_bound: u64,
) -> Result<ProbeOutcome, EvalError> {
    let code = encode_formula(phi)?;
    let neg = complement_code(&code);
    for y in 0..=proof_bound {
        let index = BigUint::from(y);
        if theory.prf(&index, &code) {
            return Ok(ProbeOutcome::ProofFound { index: y });
        }
        if theory.prf(&index, &neg) {
            return Ok(ProbeOutcome::RefutationFound { index: y });
        }
    }
    Ok(ProbeOutcome::NeitherWithinBound {
        exact: scan_is_exact(theory, proof_bound),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RosserCase {
    /// Least proof index of the sentence is at most that of its negation.
    CaseI,
    /// The negation has the strictly smaller least proof index.
    CaseII,
    NoProofs,
    OnlyOne,
}

impl fmt::Display for RosserCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RosserCase::CaseI => write!(f, "I"),
            RosserCase::CaseII => write!(f, "II"),
            RosserCase::NoProofs => write!(f, "no_proofs"),
            RosserCase::OnlyOne => write!(f, "only_one"),
        }
    }
}

/// Least proof indices of a sentence and its negation, the case they select,
/// the predicted Rosser-provability verdict, and the actual evaluation.
#[derive(Debug, Clone)]
pub struct RosserCaseReport {
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub case: RosserCase,
    /// Whether the index scan was exhaustive.
    pub exact: bool,
    /// Predicted truth of the Rosser provability of the sentence, when the
    /// case determines one.
    pub prediction: Option<bool>,
    pub rpr_verdict: TruthValue,
    /// Whether the evaluation matched the prediction (when both exist).
    pub prediction_matched: Option<bool>,
}

impl RosserCaseReport {
    pub fn to_kv(&self) -> Kv {
        let opt = |v: &Option<u64>| match v {
            Some(i) => Kv::leaf(i),
            None => Kv::leaf("none"),
        };
        Kv::node()
            .with("m", opt(&self.m))
            .with("n", opt(&self.n))
            .with("case", Kv::leaf(self.case))
            .with("exact", Kv::leaf(self.exact))
            .with(
                "prediction",
                match self.prediction {
                    Some(b) => Kv::leaf(b),
                    None => Kv::leaf("none"),
                },
            )
            .with("rpr", self.rpr_verdict.to_kv())
            .with(
                "prediction_matched",
                match self.prediction_matched {
                    Some(b) => Kv::leaf(b),
                    None => Kv::leaf("none"),
                },
            )
    }
}

/// Computes the least proof indices `m` (of the sentence) and `n` (of its
/// negation) by scanning up to `proof_bound`, selects the witness-comparison
/// case (`m <= n` predicts Rosser-provable, `n < m` predicts not), and
/// evaluates the Rosser provability of the sentence for comparison. The
/// evaluation uses a registry containing exactly this theory's proof atoms.
pub fn rosser_case_analysis(
    theory: &Theory,
    phi: &Formula,
    proof_bound: u64,
    fuel: &Fuel,
) -> Result<RosserCaseReport, EvalError> {
    let code = encode_formula(phi)?;
    let neg = complement_code(&code);
    let mut m = None;
    let mut n = None;
    for y in 0..=proof_bound {
        let index = BigUint::from(y);
        if m.is_none() && theory.prf(&index, &code) {
            m = Some(y);
        }
        if n.is_none() && theory.prf(&index, &neg) {
            n = Some(y);
        }
        if m.is_some() && n.is_some() {
            break;
        }
    }
    let exact = m.is_some() && n.is_some() || scan_is_exact(theory, proof_bound);
    let (case, prediction) = match (m, n) {
        (Some(m), Some(n)) => {
            if m <= n {
                (RosserCase::CaseI, Some(true))
            } else {
                (RosserCase::CaseII, Some(false))
            }
        }
        (Some(_), None) => (RosserCase::OnlyOne, exact.then_some(true)),
        (None, Some(_)) => (RosserCase::OnlyOne, exact.then_some(false)),
        (None, None) => (RosserCase::NoProofs, exact.then_some(false)),
    };
    let mut registry = DefinedAtomRegistry::standard();
    registry
        .register_theory(theory)
        .map_err(|_| EvalError::UnregisteredAtom(format!("prf_{}", theory.name())))?;
    let rpr = rosser_pr_formula(theory).substitute("x", &Term::Num(code.into_value()));
    let rpr_verdict = eval(&rpr, fuel, &registry)?;
    let prediction_matched = match (prediction, rpr_verdict.decided()) {
        (Some(p), Some(v)) => Some(p == v),
        _ => None,
    };
    Ok(RosserCaseReport {
        m,
        n,
        case,
        exact,
        prediction,
        rpr_verdict,
        prediction_matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::goedel_numeral;
    use crate::diagonal::{goedel_sentence, rosser_sentence};
    use crate::formula::parse::parse;
    use crate::theory::{con_sentence, pr_formula, Theory};

    fn sent(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn finite(name: &str, sentences: &[&str]) -> Theory {
        Theory::finite(name, sentences.iter().map(|s| sent(s)).collect()).unwrap()
    }

    fn registry_with(theories: &[&Theory]) -> DefinedAtomRegistry {
        let mut reg = DefinedAtomRegistry::standard();
        for t in theories {
            reg.register_theory(t).unwrap();
        }
        reg
    }

    fn ev(f: &Formula, reg: &DefinedAtomRegistry) -> TruthValue {
        eval(f, &Fuel::default(), reg).unwrap()
    }

    fn pr_at(theory: &Theory, phi: &Formula) -> Formula {
        pr_formula(theory).substitute("x", &goedel_numeral(phi).unwrap())
    }

    fn rpr_at(theory: &Theory, phi: &Formula) -> Formula {
        rosser_pr_formula(theory).substitute("x", &goedel_numeral(phi).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let reg = DefinedAtomRegistry::standard();
        let t = ev(&sent("exists y. S(0) + S(0) = y"), &reg);
        assert!(t.is_true());
        assert_eq!(
            t.certificate().unwrap().bindings.get("y"),
            Some(&BigUint::from(2u32))
        );
        let f = ev(&sent("forall x. x = 0"), &reg);
        assert!(f.is_false());
        assert_eq!(
            f.certificate().unwrap().bindings.get("x"),
            Some(&BigUint::from(1u32))
        );
        assert!(ev(&sent("forall x. x = x"), &reg).is_true());
        assert!(ev(&sent("forall x. x + 0 = x"), &reg).is_true());
        assert!(ev(&sent("forall x. ~(x * x = S(S(0)))"), &reg).is_true());
        assert!(ev(&sent("forall z < S(S(S(0))). z + z = z * S(S(0))"), &reg).is_true());
    }

    #[test]
    fn provability_instances() {
        let phi = sent("S(0) = S(0)");
        let t = finite("T", &["0 = 0", "S(0) = S(0)"]);
        let reg = registry_with(&[&t]);
        assert!(ev(&pr_at(&t, &phi), &reg).is_true());
        let absent = sent("S(S(0)) = S(S(0))");
        assert!(ev(&pr_at(&t, &absent), &reg).is_false());
    }

    #[test]
    fn rosser_provability_orderings() {
        let phi = sent("S(0) = S(0)");
        let not_phi = Formula::not(phi.clone());

        let proof_first = Theory::finite("A", vec![phi.clone(), not_phi.clone()]).unwrap();
        let reg = registry_with(&[&proof_first]);
        assert!(ev(&rpr_at(&proof_first, &phi), &reg).is_true());
        assert!(ev(&rpr_at(&proof_first, &not_phi), &reg).is_false());

        let refutation_first = Theory::finite("B", vec![not_phi.clone(), phi.clone()]).unwrap();
        let reg = registry_with(&[&refutation_first]);
        assert!(ev(&rpr_at(&refutation_first, &phi), &reg).is_false());

        let empty = finite("E", &[]);
        let reg = registry_with(&[&empty]);
        assert!(ev(&rpr_at(&empty, &phi), &reg).is_false());
    }

    #[test]
    fn rosser_provability_lemma_on_consistent_fixture() {
        let t = finite("T", &["0 = 0", "~(S(0) = 0)", "S(0) = S(0)"]);
        assert_eq!(t.finite_consistent(), Some(true));
        let reg = registry_with(&[&t]);
        for thm in t.finite_theorems().unwrap() {
            assert!(ev(&rpr_at(&t, thm), &reg).is_true());
        }
        // a refuted sentence is Rosser-unprovable
        let refuted = sent("S(0) = 0");
        assert!(ev(&rpr_at(&t, &refuted), &reg).is_false());
        // an absent sentence too
        assert!(ev(&rpr_at(&t, &sent("0 = S(S(0))")), &reg).is_false());
    }

    #[test]
    fn consistency_sentence_examples() {
        let good = finite("T", &["0 = 0"]);
        let reg = registry_with(&[&good]);
        assert!(ev(&con_sentence(&good), &reg).is_true());

        let bad = finite("B", &["~(0 = 0)"]);
        let reg = registry_with(&[&bad]);
        let v = ev(&con_sentence(&bad), &reg);
        assert!(v.is_false());

        let all = Theory::all_sentences("U").unwrap();
        let reg = registry_with(&[&all]);
        let v = ev(&con_sentence(&all), &reg);
        assert!(v.is_false());
        // the witness is the proof index of ~(0 = 0), i.e. its own code
        let absurd_code = crate::coding::encode_formula(&sent("~(0 = 0)"))
            .unwrap()
            .into_value();
        assert_eq!(
            v.certificate().unwrap().bindings.get("y"),
            Some(&absurd_code)
        );
    }

    #[test]
    fn goedel_sentence_regimes() {
        let t = finite("T", &["0 = 0"]);
        let reg = registry_with(&[&t]);
        let gamma = goedel_sentence(&t);
        assert!(ev(&gamma.theta, &reg).is_true());

        let all = Theory::all_sentences("U").unwrap();
        let reg = registry_with(&[&all]);
        let gamma = goedel_sentence(&all);
        assert!(ev(&gamma.theta, &reg).is_false());
    }

    #[test]
    fn rosser_sentence_truth() {
        for fixture in [
            finite("T", &[]),
            finite("T", &["0 = 0"]),
            finite("T", &["0 = 0", "S(0) = S(0)", "~(S(0) = 0)"]),
        ] {
            let reg = registry_with(&[&fixture]);
            let rho = rosser_sentence(&fixture);
            assert!(ev(&rho.theta, &reg).is_true());
        }
    }

    #[test]
    fn sigma1_evaluation() {
        let phi = sent("0 = 0");
        let t = finite("T", &["0 = 0"]);
        let reg = registry_with(&[&t]);
        assert!(eval_sigma1(&pr_at(&t, &phi), 100, &reg).unwrap().is_true());
        assert!(eval_sigma1(&pr_at(&t, &sent("S(0) = 0")), 100, &reg)
            .unwrap()
            .is_false());
        // class precondition
        let pi2 = sent("forall a. exists b. b = a + a");
        assert!(matches!(
            eval_sigma1(&pi2, 100, &reg),
            Err(EvalError::ClassTooHigh { .. })
        ));
        // agreement with the general evaluator on a Rosser instance
        let r = rpr_at(&t, &phi);
        assert_eq!(
            eval_sigma1(&r, DEFAULT_WITNESS_BOUND, &reg).unwrap().decided(),
            ev(&r, &reg).decided()
        );
    }

    #[test]
    fn fixed_point_checks() {
        let reg = DefinedAtomRegistry::standard();
        let psi = sent("x = x");
        let report = crate::diagonal::fixed_point_pi(&psi, 1).unwrap();
        let check = check_fixed_point(&report, &psi, &Fuel::default(), &reg).unwrap();
        assert!(check.identity_ok);
        assert!(!check.contradictory);
        assert_eq!(check.agreement, Some(true));
        assert!(check.theta_verdict.is_true());

        // over a calculus backend provability search is fuel-limited, so the
        // sides may stay undecided; that is non-contradictory by definition
        let calc = Theory::calculus("C", vec![sent("0 = 0")]).unwrap();
        let mut reg = DefinedAtomRegistry::standard();
        reg.register_theory(&calc).unwrap();
        let psi = Formula::not(pr_formula(&calc));
        let report = crate::diagonal::fixed_point_pi(&psi, 1).unwrap();
        let check = check_fixed_point(
            &report,
            &psi,
            &Fuel::new(50, 8).unwrap(),
            &reg,
        )
        .unwrap();
        assert!(check.identity_ok);
        assert!(!check.contradictory);
    }

    #[test]
    fn soundness_audits() {
        let clean = finite("T", &["0 = 0", "S(0) = S(0)", "forall x. x = x"]);
        let reg = registry_with(&[&clean]);
        let report =
            soundness_audit(&clean, HierarchyClass::Pi(1), 100, &Fuel::default(), &reg).unwrap();
        assert!(report.passes());
        assert_eq!(report.verdicts.len(), 3);

        let planted = finite("P", &["0 = 0", "0 = S(0)"]);
        let reg = registry_with(&[&planted]);
        let report =
            soundness_audit(&planted, HierarchyClass::Delta0, 100, &Fuel::default(), &reg)
                .unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(!report.passes());

        // a false universal theorem is flagged at pi1
        let planted_pi = finite("Q", &["forall x. x = S(x)"]);
        let reg = registry_with(&[&planted_pi]);
        let report =
            soundness_audit(&planted_pi, HierarchyClass::Pi(1), 100, &Fuel::default(), &reg)
                .unwrap();
        assert_eq!(report.violations.len(), 1);

        // undecided sentences are reported separately, never as violations
        let undecided = finite("R", &["forall x. exists y. y = x + x"]);
        let reg = registry_with(&[&undecided]);
        let report =
            soundness_audit(&undecided, HierarchyClass::Pi(2), 100, &Fuel::default(), &reg)
                .unwrap();
        assert!(report.passes());
        assert_eq!(report.unknowns.len(), 1);

        // the all-proving theory fails the delta0 audit within a small bound
        let all = Theory::all_sentences("U").unwrap();
        let reg = registry_with(&[&all]);
        let absurd_code = crate::coding::encode_formula(&sent("~(0 = 0)"))
            .unwrap()
            .into_value();
        let bound = u64::try_from(&absurd_code).unwrap() + 10;
        let report =
            soundness_audit(&all, HierarchyClass::Delta0, bound, &Fuel::default(), &reg).unwrap();
        assert!(!report.passes());
    }

    #[test]
    fn independence_probes() {
        let phi = sent("S(0) = S(0)");
        let t = finite("T", &["0 = 0", "S(0) = S(0)"]);
        assert_eq!(
            independence_probe(&t, &phi, 100).unwrap(),
            ProbeOutcome::ProofFound { index: 1 }
        );
        let r = Theory::finite("R", vec![Formula::not(phi.clone())]).unwrap();
        assert_eq!(
            independence_probe(&r, &phi, 100).unwrap(),
            ProbeOutcome::RefutationFound { index: 0 }
        );
        let rho = rosser_sentence(&t);
        assert_eq!(
            independence_probe(&t, &rho.theta, 100).unwrap(),
            ProbeOutcome::NeitherWithinBound { exact: true }
        );
        // insufficient bound is flagged inexact
        assert_eq!(
            independence_probe(&t, &rho.theta, 0).unwrap(),
            ProbeOutcome::NeitherWithinBound { exact: false }
        );
    }

    #[test]
    fn rosser_case_reports() {
        let phi = sent("S(0) = S(0)");
        let not_phi = Formula::not(phi.clone());
        let fuel = Fuel::default();

        let a = Theory::finite("A", vec![phi.clone(), not_phi.clone()]).unwrap();
        let report = rosser_case_analysis(&a, &phi, 100, &fuel).unwrap();
        assert_eq!((report.m, report.n), (Some(0), Some(1)));
        assert_eq!(report.case, RosserCase::CaseI);
        assert!(report.rpr_verdict.is_true());
        assert_eq!(report.prediction_matched, Some(true));

        let b = Theory::finite("B", vec![not_phi.clone(), phi.clone()]).unwrap();
        let report = rosser_case_analysis(&b, &phi, 100, &fuel).unwrap();
        assert_eq!((report.m, report.n), (Some(1), Some(0)));
        assert_eq!(report.case, RosserCase::CaseII);
        assert!(report.rpr_verdict.is_false());
        assert_eq!(report.prediction_matched, Some(true));

        let c = Theory::finite("C", vec![phi.clone()]).unwrap();
        let report = rosser_case_analysis(&c, &phi, 100, &fuel).unwrap();
        assert_eq!((report.m, report.n), (Some(0), None));
        assert_eq!(report.case, RosserCase::OnlyOne);
        assert!(report.rpr_verdict.is_true());
        assert_eq!(report.prediction_matched, Some(true));
    }

    #[test]
    fn certificates_replay() {
        let t = finite("T", &["0 = 0", "S(0) = S(0)"]);
        let all = Theory::all_sentences("U").unwrap();
        let reg = {
            let mut r = registry_with(&[&t]);
            r.register_theory(&all).unwrap();
            r
        };
        let fuel = Fuel::default();
        let samples = [
            sent("exists y. S(0) + S(0) = y"),
            sent("forall x. x = 0"),
            sent("forall x. x = x"),
            pr_at(&t, &sent("0 = 0")),
            rpr_at(&t, &sent("S(0) = S(0)")),
            con_sentence(&t),
            con_sentence(&all),
            goedel_sentence(&t).theta,
            goedel_sentence(&all).theta,
            rosser_sentence(&t).theta,
        ];
        for f in &samples {
            let verdict = eval(f, &fuel, &reg).unwrap();
            assert!(
                verdict.decided().is_some(),
                "expected a decided verdict for {f}"
            );
            assert!(
                replay_certificate(f, &verdict, &fuel, &reg).unwrap(),
                "certificate replay failed for {f}"
            );
        }
        // a tampered witness does not replay
        let f = sent("exists y. y = S(S(0))");
        let mut cert = Certificate::default();
        cert.bindings.insert("y".to_string(), BigUint::from(3u32));
        assert!(!replay_certificate(&f, &TruthValue::True(cert), &fuel, &reg).unwrap());
    }

    #[test]
    fn fuel_monotonicity_smoke() {
        let t = finite("T", &["0 = 0"]);
        let reg = registry_with(&[&t]);
        let ladder = [
            Fuel::new(5, 4).unwrap(),
            Fuel::new(100, 16).unwrap(),
            Fuel::default(),
        ];
        let samples = [
            sent("exists y. y = S(S(S(S(S(S(S(0)))))))"),
            sent("forall x. exists y. y = x + x"),
            goedel_sentence(&t).theta,
            con_sentence(&t),
        ];
        for f in &samples {
            let mut last: Option<bool> = None;
            for fuel in &ladder {
                let v = eval(f, fuel, &reg).unwrap();
                if let Some(b) = v.decided() {
                    if let Some(prev) = last {
                        assert_eq!(prev, b, "fuel ladder flipped verdict for {f}");
                    }
                    last = Some(b);
                }
            }
        }
    }

    #[test]
    fn eval_errors() {
        let reg = DefinedAtomRegistry::standard();
        assert!(matches!(
            eval(&sent("mystery(0)"), &Fuel::default(), &reg),
            Err(EvalError::UnregisteredAtom(_))
        ));
        assert!(matches!(
            eval(&sent("x = 0"), &Fuel::default(), &reg),
            Err(EvalError::OpenFormula(_))
        ));
        assert!(matches!(
            eval(&sent("delta(0)"), &Fuel::default(), &reg),
            Err(EvalError::ArityMismatch { .. })
        ));
        assert_eq!(Fuel::new(0, 4), Err(EvalError::InvalidFuel));
    }
}
