//! Finite-support analysis: deciding quantifiers exactly.
//!
//! A support for a formula `M` with one free variable says that `M(y)` equals
//! a fixed limit value for every `y` outside a finite, explicitly listed
//! exception set. When the evaluator has a support for a quantifier matrix it
//! can decide the quantifier exactly — including at witnesses far beyond any
//! feasible search bound, which is the normal situation for diagonal
//! sentences: their interesting instance sits at the sentence's own Gödel
//! code.
//!
//! Supports come from three sources: registered atoms whose backends can
//! enumerate their true set in one argument (proof relations over finite or
//! code-indexed theories, the diagonal representation), polynomial analysis
//! of equalities, and evaluation of subformulas in which the variable does
//! not occur. Connectives combine supports, with short-circuit rules that
//! make guarded matrices analyzable even when the guarded side is not: a
//! conjunction with an almost-everywhere-false side is almost everywhere
//! false regardless of the other side, and dually for disjunction and the
//! antecedent of an implication.

use super::poly;
use super::{EvalCtx, TruthValue};
use crate::formula::{Formula, Term};
use num_bigint::BigUint;

/// `M(y) = limit` for every `y` outside `exceptions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub exceptions: Vec<BigUint>,
    pub limit: bool,
}

impl Support {
    fn constant(limit: bool) -> Support {
        Support {
            exceptions: vec![],
            limit,
        }
    }

    fn negate(mut self) -> Support {
        self.limit = !self.limit;
        self
    }

    /// Sorted, deduplicated exception list.
    pub fn sorted_exceptions(&self) -> Vec<BigUint> {
        let mut v = self.exceptions.clone();
        v.sort();
        v.dedup();
        v
    }
}

fn union(a: Support, b: Support, limit: bool) -> Support {
    let mut exceptions = a.exceptions;
    exceptions.extend(b.exceptions);
    Support { exceptions, limit }
}

/// Computes a support of `f` as a function of `var`, or `None` when no exact
/// analysis applies. `f` must have no free variables besides `var`.
pub(crate) fn formula_support(
    f: &Formula,
    var: &str,
    depth: u32,
    ctx: &EvalCtx<'_>,
) -> Option<Support> {
    if !f.free_vars().contains(var) {
        // Constant in `var`: evaluate it outright.
        return match super::eval_rec(f, depth, ctx, &mut Vec::new()) {
            TruthValue::True(_) => Some(Support::constant(true)),
            TruthValue::False(_) => Some(Support::constant(false)),
            TruthValue::Unknown(_) => None,
        };
    }
    match f {
        Formula::Eq(l, r) => poly::eq_support(l, r, var),
        Formula::DefinedAtom { symbol, args, .. } => {
            let positions: Vec<usize> = args
                .iter()
                .enumerate()
                .filter(|(_, a)| a.contains_var(var))
                .map(|(i, _)| i)
                .collect();
            let position = match positions.as_slice() {
                [p] if args[*p] == Term::Var(var.to_string()) => *p,
                _ => return None,
            };
            let others: Vec<BigUint> = args
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != position)
                .map(|(_, a)| a.value_closed())
                .collect::<Option<Vec<_>>>()?;
            ctx.registry.get(symbol)?.support(position, &others)
        }
        Formula::Not(g) => Some(formula_support(g, var, depth, ctx)?.negate()),
        Formula::And(l, r) => {
            let sl = formula_support(l, var, depth, ctx);
            if let Some(s) = &sl {
                if !s.limit {
                    return sl;
                }
            }
            let sr = formula_support(r, var, depth, ctx);
            if let Some(s) = &sr {
                if !s.limit {
                    return sr;
                }
            }
            match (sl, sr) {
                (Some(a), Some(b)) => {
                    let limit = a.limit && b.limit;
                    Some(union(a, b, limit))
                }
                _ => None,
            }
        }
        Formula::Or(l, r) => {
            let sl = formula_support(l, var, depth, ctx);
            if let Some(s) = &sl {
                if s.limit {
                    return sl;
                }
            }
            let sr = formula_support(r, var, depth, ctx);
            if let Some(s) = &sr {
                if s.limit {
                    return sr;
                }
            }
            match (sl, sr) {
                (Some(a), Some(b)) => {
                    let limit = a.limit || b.limit;
                    Some(union(a, b, limit))
                }
                _ => None,
            }
        }
        Formula::Implies(l, r) => {
            let sl = formula_support(l, var, depth, ctx);
            if let Some(s) = &sl {
                if !s.limit {
                    // antecedent almost everywhere false: implication almost
                    // everywhere true, whatever the consequent does
                    return Some(Support {
                        exceptions: s.exceptions.clone(),
                        limit: true,
                    });
                }
            }
            let sr = formula_support(r, var, depth, ctx);
            if let Some(s) = &sr {
                if s.limit {
                    return Some(Support {
                        exceptions: s.exceptions.clone(),
                        limit: true,
                    });
                }
            }
            match (sl, sr) {
                (Some(a), Some(b)) => {
                    let limit = !a.limit || b.limit;
                    Some(union(a, b, limit))
                }
                _ => None,
            }
        }
        Formula::Iff(l, r) => {
            let a = formula_support(l, var, depth, ctx)?;
            let b = formula_support(r, var, depth, ctx)?;
            let limit = a.limit == b.limit;
            Some(union(a, b, limit))
        }
        // Quantified subformulas in which `var` occurs free are not analyzed
        // compositionally; the short-circuit rules above keep guarded
        // occurrences reachable.
        Formula::Forall(_, _)
        | Formula::Exists(_, _)
        | Formula::BForall(_, _, _)
        | Formula::BExists(_, _, _)
        | Formula::PropVar(_) => None,
    }
}
