//! Diagonal fixed-point constructors and the named self-referential
//! sentences built from them.
//!
//! Given a predicate `psi(x)` with one free variable, the constructors build
//! a sentence `theta` asserting `psi` of its own Gödel code. The universal
//! form guards with the diagonal atom (`alpha(x) = forall y. delta(x, y) ->
//! psi(y)`) and preserves `pi` levels; the existential form witnesses it
//! (`eta(x) = exists y. delta(x, y) & psi(y)`) and preserves `sigma` levels.
//! In both, `theta` is the template applied to the numeral of its own code,
//! and the self-reference identity `diag(code(template)) = code(theta)` is
//! computed twice by independent routes and carried in the report.

use crate::coding::{self, encode_formula, Code, CodingError};
use crate::formula::classify::{classify, ClassifyError};
use crate::formula::template::{PropTemplate, TemplateError};
use crate::formula::{fresh_var, Formula, HierarchyClass, Term};
use crate::report::Kv;
use crate::theory::{
    delta_atom, pr_formula, rosser_pr_formula, DefinedAtomRegistry, Theory, TheoryError,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("expected exactly one free variable, found {0:?}")]
    NotOneFreeVariable(Vec<String>),
    #[error("hierarchy level must be at least 1")]
    InvalidLevel,
    #[error("predicate classifies as {actual}, above the requested {required}")]
    ClassTooHigh {
        required: HierarchyClass,
        actual: HierarchyClass,
    },
    #[error("template is over {expected} variables but {found} contexts were given")]
    ContextCountMismatch { expected: usize, found: usize },
    #[error("template variables must be p1..pn, found '{0}'")]
    BadTemplateVariable(String),
    #[error("context {0} must have exactly one propositional variable")]
    ContextNotUnary(usize),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A constructed fixed point. `theta` is `alpha` applied to the numeral of
/// `alpha`'s own code; `diag_of_alpha` is computed through the code-level
/// diagonal function (decode, substitute, re-encode) while `theta_code`
/// encodes the directly built sentence, so their equality is a two-route
/// check of the self-reference identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub theta: Formula,
    pub alpha: Formula,
    pub alpha_code: Code,
    pub diag_of_alpha: Code,
    pub theta_code: Code,
    pub declared_class: HierarchyClass,
}

impl FixedPointReport {
    /// The self-reference identity: both routes to the code of `theta`
    /// agree exactly.
    pub fn identity_holds(&self) -> bool {
        self.diag_of_alpha == self.theta_code
    }

    pub fn to_kv(&self) -> Kv {
        Kv::node()
            .with("theta", Kv::leaf(&self.theta))
            .with("alpha", Kv::leaf(&self.alpha))
            .with("class", Kv::leaf(self.declared_class))
            .with("alpha_code", Kv::leaf(&self.alpha_code))
            .with("diag_of_alpha", Kv::leaf(&self.diag_of_alpha))
            .with("theta_code", Kv::leaf(&self.theta_code))
            .with(
                "identity",
                Kv::leaf(if self.identity_holds() { "PASS" } else { "FAIL" }),
            )
    }
}

fn one_free_var(psi: &Formula) -> Result<String, DiagonalError> {
    let free: Vec<String> = psi.free_vars().into_iter().collect();
    match free.as_slice() {
        [x] => Ok(x.clone()),
        _ => Err(DiagonalError::NotOneFreeVariable(free)),
    }
}

fn build_fixed_point(psi: &Formula, universal: bool) -> Result<FixedPointReport, DiagonalError> {
    let x = one_free_var(psi)?;
    let mut avoid = psi.all_vars();
    avoid.insert(x.clone());
    let y = fresh_var("y", &avoid);
    let psi_of_y = psi.substitute(&x, &Term::var(y.clone()));
    let guard = delta_atom(Term::var(x.clone()), Term::var(y.clone()));
    let alpha = if universal {
        Formula::forall(y.clone(), Formula::implies(guard, psi_of_y))
    } else {
        Formula::exists(y.clone(), Formula::and(guard, psi_of_y))
    };
    let alpha_code = encode_formula(&alpha)?;
    let theta = alpha.substitute(&x, &Term::Num(alpha_code.value().clone()));
    let theta_code = encode_formula(&theta)?;
    let diag_of_alpha = coding::diag(&alpha_code)?;
    let declared_class = classify(&theta)?;
    Ok(FixedPointReport {
        theta,
        alpha,
        alpha_code,
        diag_of_alpha,
        theta_code,
        declared_class,
    })
}

/// Fixed point through the universal guard form: for `psi` of class at most
/// `pi n`, produces a sentence of class at most `pi n` asserting `psi` of
/// its own code (exactly `pi n` when `psi` is).
pub fn fixed_point_pi(psi: &Formula, n: u32) -> Result<FixedPointReport, DiagonalError> {
    if n == 0 {
        return Err(DiagonalError::InvalidLevel);
    }
    let required = HierarchyClass::Pi(n);
    let actual = classify(psi)?;
    if !actual.le(&required) {
        return Err(DiagonalError::ClassTooHigh { required, actual });
    }
    build_fixed_point(psi, true)
}

/// Fixed point through the existential witness form: for `psi` of class at
/// most `sigma n`, produces a sentence of class at most `sigma n` asserting
/// `psi` of its own code (exactly `sigma n` when `psi` is).
pub fn fixed_point_sigma(psi: &Formula, n: u32) -> Result<FixedPointReport, DiagonalError> {
    if n == 0 {
        return Err(DiagonalError::InvalidLevel);
    }
    let required = HierarchyClass::Sigma(n);
    let actual = classify(psi)?;
    if !actual.le(&required) {
        return Err(DiagonalError::ClassTooHigh { required, actual });
    }
    build_fixed_point(psi, false)
}

/// The canonical Gödel sentence of a theory: the `pi1` fixed point of the
/// negated provability predicate.
pub fn goedel_sentence(theory: &Theory) -> FixedPointReport {
    fixed_point_pi(&Formula::not(pr_formula(theory)), 1)
        .expect("negated provability is pi1 with one free variable")
}

/// The canonical Rosser sentence of a theory: the `pi1` fixed point of the
/// negated Rosser provability predicate.
pub fn rosser_sentence(theory: &Theory) -> FixedPointReport {
    fixed_point_pi(&Formula::not(rosser_pr_formula(theory)), 1)
        .expect("negated Rosser provability is pi1 with one free variable")
}

/// The canonical Henkin sentence: the `sigma1` fixed point of the
/// provability predicate (a sentence asserting its own provability).
pub fn henkin_sentence(theory: &Theory) -> FixedPointReport {
    fixed_point_sigma(&pr_formula(theory), 1)
        .expect("provability is sigma1 with one free variable")
}

/// The Rosser-type Henkin sentence: the `sigma1` fixed point of the Rosser
/// provability predicate.
pub fn rosser_henkin_sentence(theory: &Theory) -> FixedPointReport {
    fixed_point_sigma(&rosser_pr_formula(theory), 1)
        .expect("Rosser provability is sigma1 with one free variable")
}

/// Outcome of the propositional collapse of a pseudo-diagonal template over
/// a theory proving every sentence: `positive` means such a theory settles
/// the fixed point positively (proves it), otherwise it proves the negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decided {
    pub positive: bool,
}

/// Evaluates the template at the all-true assignment: over a theory that
/// proves every sentence, all provability atoms are true, so the fixed point
/// collapses to this single truth value.
pub fn pseudo_goedelian_decide(template: &PropTemplate) -> Decided {
    Decided {
        positive: template.eval_all_true(),
    }
}

/// Builds a pseudo-diagonal fixed point: a sentence equivalent to a
/// propositional combination `B` of provability statements about contexts
/// `C_i` applied to the sentence itself. Each context atom is registered as
/// `prctx_<theory>_<i>` with semantics "the theory proves `C_i` of the coded
/// formula"; symbol collisions are an error, not a silent reuse.
pub fn pseudo_goedelian(
    theory: &Theory,
    template: &PropTemplate,
    contexts: &[PropTemplate],
    registry: &mut DefinedAtomRegistry,
) -> Result<FixedPointReport, DiagonalError> {
    let vars = template.vars();
    if vars.is_empty() || vars.len() != contexts.len() {
        return Err(DiagonalError::ContextCountMismatch {
            expected: vars.len(),
            found: contexts.len(),
        });
    }
    let n = contexts.len();
    for v in &vars {
        let index: Option<usize> = v
            .strip_prefix('p')
            .and_then(|rest| rest.parse().ok())
            .filter(|i| (1..=n).contains(i));
        if index.is_none() {
            return Err(DiagonalError::BadTemplateVariable(v.clone()));
        }
    }
    for (i, context) in contexts.iter().enumerate() {
        if context.vars().len() != 1 {
            return Err(DiagonalError::ContextNotUnary(i + 1));
        }
    }
    let mut map = BTreeMap::new();
    for (i, context) in contexts.iter().enumerate() {
        let symbol = registry.register_pr_context(theory, i + 1, context)?;
        let atom = Formula::atom(symbol, vec![Term::var("x")], HierarchyClass::Sigma(1));
        map.insert(format!("p{}", i + 1), atom);
    }
    let psi = template.instantiate(&map)?;
    match classify(&psi)? {
        HierarchyClass::Sigma(k) => fixed_point_sigma(&psi, k),
        HierarchyClass::Pi(k) => fixed_point_pi(&psi, k),
        HierarchyClass::Delta0 => fixed_point_pi(&psi, 1),
    }
}

/// The template and contexts of the "unprovable and irrefutable" pseudo
/// fixed point: `~p1 & ~p2` over contexts `p`, `~p`.
pub fn builtin_pseudo_p() -> (PropTemplate, Vec<PropTemplate>) {
    let template = PropTemplate::new(Formula::and(
        Formula::not(Formula::prop("p1")),
        Formula::not(Formula::prop("p2")),
    ))
    .expect("propositional");
    let contexts = vec![
        PropTemplate::new(Formula::prop("p")).expect("propositional"),
        PropTemplate::new(Formula::not(Formula::prop("p"))).expect("propositional"),
    ];
    (template, contexts)
}

/// The template and contexts of the "provability implies irrefutability"
/// pseudo fixed point: `p1 -> ~p2` over contexts `p`, `~p`.
pub fn builtin_pseudo_r() -> (PropTemplate, Vec<PropTemplate>) {
    let template = PropTemplate::new(Formula::implies(
        Formula::prop("p1"),
        Formula::not(Formula::prop("p2")),
    ))
    .expect("propositional");
    let contexts = vec![
        PropTemplate::new(Formula::prop("p")).expect("propositional"),
        PropTemplate::new(Formula::not(Formula::prop("p"))).expect("propositional"),
    ];
    (template, contexts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse::parse;
    use crate::formula::template::parse_template;

    #[test]
    fn pi_fixed_point_basics() {
        let psi = parse("x = x").unwrap();
        let report = fixed_point_pi(&psi, 1).unwrap();
        assert!(report.identity_holds());
        assert_eq!(report.declared_class, HierarchyClass::Pi(1));
        assert!(report.theta.is_sentence());
        assert_eq!(report.alpha.free_vars().len(), 1);
    }

    #[test]
    fn sigma_fixed_point_basics() {
        let psi = parse("x = x").unwrap();
        let report = fixed_point_sigma(&psi, 1).unwrap();
        assert!(report.identity_holds());
        assert_eq!(report.declared_class, HierarchyClass::Sigma(1));
    }

    #[test]
    fn class_preservation_at_exact_level() {
        // pi2 predicate stays pi2; sigma2 stays sigma2
        let pi2 = parse("forall a. exists b. a + b = x").unwrap();
        assert_eq!(classify(&pi2).unwrap(), HierarchyClass::Pi(2));
        let report = fixed_point_pi(&pi2, 2).unwrap();
        assert_eq!(report.declared_class, HierarchyClass::Pi(2));

        let sigma2 = parse("exists a. forall b. ~(a + b = x)").unwrap();
        assert_eq!(classify(&sigma2).unwrap(), HierarchyClass::Sigma(2));
        let report = fixed_point_sigma(&sigma2, 2).unwrap();
        assert_eq!(report.declared_class, HierarchyClass::Sigma(2));
    }

    #[test]
    fn preconditions_enforced() {
        let psi = parse("x = x").unwrap();
        assert_eq!(fixed_point_pi(&psi, 0), Err(DiagonalError::InvalidLevel));
        let sigma1 = parse("exists z. z = x").unwrap();
        assert!(matches!(
            fixed_point_pi(&sigma1, 1),
            Err(DiagonalError::ClassTooHigh { .. })
        ));
        let sentence = parse("0 = 0").unwrap();
        assert!(matches!(
            fixed_point_pi(&sentence, 1),
            Err(DiagonalError::NotOneFreeVariable(_))
        ));
        let two_vars = parse("x = z").unwrap();
        assert!(matches!(
            fixed_point_sigma(&two_vars, 1),
            Err(DiagonalError::NotOneFreeVariable(_))
        ));
    }

    #[test]
    fn sigma1_diagonalization_of_negated_provability_is_a_class_error() {
        // The negated provability predicate is pi1, so no sigma1 fixed point
        // of it can be requested; true self-referential unprovability cannot
        // take the existential form at level one.
        let t = Theory::finite("T", vec![parse("0 = 0").unwrap()]).unwrap();
        let psi = Formula::not(pr_formula(&t));
        assert!(matches!(
            fixed_point_sigma(&psi, 1),
            Err(DiagonalError::ClassTooHigh { .. })
        ));
    }

    #[test]
    fn named_constructors_have_expected_classes() {
        let t = Theory::finite("T", vec![parse("0 = 0").unwrap()]).unwrap();
        assert_eq!(goedel_sentence(&t).declared_class, HierarchyClass::Pi(1));
        assert_eq!(rosser_sentence(&t).declared_class, HierarchyClass::Pi(1));
        assert_eq!(henkin_sentence(&t).declared_class, HierarchyClass::Sigma(1));
        assert_eq!(
            rosser_henkin_sentence(&t).declared_class,
            HierarchyClass::Sigma(1)
        );
    }

    #[test]
    fn goedel_sentence_is_not_among_the_theorems() {
        let t = Theory::finite("T", vec![parse("0 = 0").unwrap()]).unwrap();
        let gamma = goedel_sentence(&t);
        assert!(!t
            .finite_theorems()
            .unwrap()
            .iter()
            .any(|f| f == &gamma.theta));
    }

    #[test]
    fn decide_collapses_builtins() {
        let (p, _) = builtin_pseudo_p();
        assert_eq!(pseudo_goedelian_decide(&p), Decided { positive: false });
        let (r, _) = builtin_pseudo_r();
        assert_eq!(pseudo_goedelian_decide(&r), Decided { positive: false });
        let taut = parse_template("p1 | ~p1").unwrap();
        assert_eq!(pseudo_goedelian_decide(&taut), Decided { positive: true });
    }

    #[test]
    fn pseudo_arity_checks() {
        let u = Theory::all_sentences("U").unwrap();
        let mut reg = DefinedAtomRegistry::standard();
        let (template, _) = builtin_pseudo_p();
        let one_context = vec![PropTemplate::new(Formula::prop("p")).unwrap()];
        assert!(matches!(
            pseudo_goedelian(&u, &template, &one_context, &mut reg),
            Err(DiagonalError::ContextCountMismatch { .. })
        ));
        let bad_var = parse_template("q1 & q2").unwrap();
        let (_, contexts) = builtin_pseudo_p();
        assert!(matches!(
            pseudo_goedelian(&u, &bad_var, &contexts, &mut reg),
            Err(DiagonalError::BadTemplateVariable(_))
        ));
    }

    #[test]
    fn pseudo_registers_context_atoms() {
        let u = Theory::all_sentences("U").unwrap();
        let mut reg = DefinedAtomRegistry::standard();
        let (template, contexts) = builtin_pseudo_p();
        let report = pseudo_goedelian(&u, &template, &contexts, &mut reg).unwrap();
        assert!(report.identity_holds());
        assert!(reg.get("prctx_U_1").is_some());
        assert!(reg.get("prctx_U_2").is_some());
        // re-running collides instead of silently reusing
        assert!(matches!(
            pseudo_goedelian(&u, &template, &contexts, &mut reg),
            Err(DiagonalError::Theory(TheoryError::SymbolCollision(_)))
        ));
    }
}
