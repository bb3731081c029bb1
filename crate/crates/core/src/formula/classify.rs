//! Classification of formulas in the arithmetical hierarchy.

use super::{Formula, HierarchyClass};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("propositional variables cannot be classified; instantiate the template first")]
    PropVar,
}

/// Computes the least hierarchy class of a formula under the syntactic
/// prenex reading.
///
/// Rules: equalities are `delta0`; a defined atom contributes its declared
/// class; negation dualizes; binary connectives take joins (an implication
/// dualizes its antecedent first); an unbounded existential over a class
/// that is not already existential bumps to the next `sigma` level, and
/// dually for universals; bounded quantifiers never raise the class.
pub fn classify(f: &Formula) -> Result<HierarchyClass, ClassifyError> {
    use HierarchyClass::*;
    match f {
        Formula::Eq(_, _) => Ok(Delta0),
        Formula::DefinedAtom { class, .. } => Ok(*class),
        Formula::PropVar(_) => Err(ClassifyError::PropVar),
        Formula::Not(g) => Ok(classify(g)?.dual()),
        Formula::And(l, r) | Formula::Or(l, r) => Ok(classify(l)?.join(&classify(r)?)),
        Formula::Implies(l, r) => Ok(classify(l)?.dual().join(&classify(r)?)),
        Formula::Iff(l, r) => {
            let cl = classify(l)?;
            let cr = classify(r)?;
            let fwd = cl.dual().join(&cr);
            let bwd = cr.dual().join(&cl);
            Ok(fwd.join(&bwd))
        }
        Formula::Forall(_, g) => Ok(match classify(g)? {
            Delta0 => Pi(1),
            Pi(n) => Pi(n),
            Sigma(n) => Pi(n + 1),
        }),
        Formula::Exists(_, g) => Ok(match classify(g)? {
            Delta0 => Sigma(1),
            Sigma(n) => Sigma(n),
            Pi(n) => Sigma(n + 1),
        }),
        Formula::BForall(_, _, g) | Formula::BExists(_, _, g) => classify(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse::parse, Term};

    #[test]
    fn pi2_example() {
        let f = parse("forall x. exists y. ~(y = x)").unwrap();
        assert_eq!(classify(&f).unwrap(), HierarchyClass::pi(2));
    }

    #[test]
    fn provability_shape_is_sigma1() {
        // exists y. prf_T(y, x) with the proof atom declared delta0
        let f = Formula::exists(
            "y",
            Formula::atom(
                "prf_T",
                vec![Term::var("y"), Term::var("x")],
                HierarchyClass::Delta0,
            ),
        );
        assert_eq!(classify(&f).unwrap(), HierarchyClass::sigma(1));
        // and with the conservative sigma1 declaration the class is unchanged
        let g = Formula::exists(
            "y",
            Formula::atom(
                "prf_T",
                vec![Term::var("y"), Term::var("x")],
                HierarchyClass::sigma(1),
            ),
        );
        assert_eq!(classify(&g).unwrap(), HierarchyClass::sigma(1));
    }

    #[test]
    fn negation_dualizes() {
        let f = parse("exists y. y = 0").unwrap();
        assert_eq!(classify(&f).unwrap(), HierarchyClass::sigma(1));
        assert_eq!(
            classify(&Formula::not(f)).unwrap(),
            HierarchyClass::pi(1)
        );
    }

    #[test]
    fn bounded_quantifiers_are_delta0() {
        let f = parse("forall z < S(S(0)). exists w < z. w = 0").unwrap();
        assert_eq!(classify(&f).unwrap(), HierarchyClass::Delta0);
    }

    #[test]
    fn templates_rejected() {
        assert_eq!(classify(&Formula::prop("p1")), Err(ClassifyError::PropVar));
    }
}
