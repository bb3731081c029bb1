//! Terms and formulas of first-order arithmetic.
//!
//! The term language is `0`, successor, addition, multiplication, and
//! variables. Numerals (iterated successors of zero) are stored compactly as a
//! single [`Term::Num`] node holding the denoted value; the smart constructors
//! keep that representation canonical, so `S(S(0))` built through
//! [`Term::succ`] and `numeral(2)` are structurally equal. The compact form is
//! essential: diagonalization substitutes numerals of Gödel codes into
//! formulas, and those codes are far too large for a literal successor chain.
//!
//! Formulas add the usual connectives, unbounded and bounded quantifiers,
//! defined atoms (named predicate symbols with an executable interpretation
//! registered elsewhere), and propositional variables, which are only legal
//! inside propositional templates.

use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeSet;

pub mod classify;
pub mod hierarchy;
pub mod parse;
pub mod print;
pub mod template;

pub use hierarchy::HierarchyClass;

/// A term of the language of arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A numeral: the `n`-fold successor of zero, stored by value.
    Num(BigUint),
    /// A first-order variable.
    Var(String),
    /// Successor of a non-numeral term (numeral children fold into `Num`).
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    /// The zero term, i.e. the numeral 0.
    pub fn zero() -> Term {
        Term::Num(BigUint::from(0u32))
    }

    pub fn num(n: impl Into<BigUint>) -> Term {
        Term::Num(n.into())
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// Successor constructor; folds numerals so the canonical form of a pure
    /// successor chain is always a single `Num`.
    pub fn succ(t: Term) -> Term {
        match t {
            Term::Num(n) => Term::Num(n + BigUint::one()),
            other => Term::Succ(Box::new(other)),
        }
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    /// The denoted value if this term is a numeral.
    pub fn as_numeral(&self) -> Option<&BigUint> {
        match self {
            Term::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_numeral(&self) -> bool {
        matches!(self, Term::Num(_))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Num(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, var: &str) -> bool {
        match self {
            Term::Num(_) => false,
            Term::Var(v) => v == var,
            Term::Succ(t) => t.contains_var(var),
            Term::Add(l, r) | Term::Mul(l, r) => l.contains_var(var) || r.contains_var(var),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Num(_) => true,
            Term::Var(_) => false,
            Term::Succ(t) => t.is_closed(),
            Term::Add(l, r) | Term::Mul(l, r) => l.is_closed() && r.is_closed(),
        }
    }

    /// Replaces every occurrence of `var` by `replacement`, renormalizing
    /// successor chains that become numerals.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Num(_) => self.clone(),
            Term::Var(v) => {
                if v == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Term::Succ(t) => Term::succ(t.substitute(var, replacement)),
            Term::Add(l, r) => {
                Term::add(l.substitute(var, replacement), r.substitute(var, replacement))
            }
            Term::Mul(l, r) => {
                Term::mul(l.substitute(var, replacement), r.substitute(var, replacement))
            }
        }
    }

    /// Evaluates a closed term to its value in the standard model.
    pub fn value_closed(&self) -> Option<BigUint> {
        match self {
            Term::Num(n) => Some(n.clone()),
            Term::Var(_) => None,
            Term::Succ(t) => Some(t.value_closed()? + BigUint::one()),
            Term::Add(l, r) => Some(l.value_closed()? + r.value_closed()?),
            Term::Mul(l, r) => Some(l.value_closed()? * r.value_closed()?),
        }
    }
}

/// The numeral of `n`: the `n`-fold successor of zero.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::Num(n.into())
}

/// A formula of the language of arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `forall v < bound. body`; the bound term must not contain `v`.
    BForall(String, Term, Box<Formula>),
    /// `exists v < bound. body`; the bound term must not contain `v`.
    BExists(String, Term, Box<Formula>),
    /// A named predicate symbol applied to terms, carrying the
    /// arithmetical-hierarchy class it was declared with.
    DefinedAtom {
        symbol: String,
        args: Vec<Term>,
        class: HierarchyClass,
    },
    /// A propositional variable; legal only inside propositional templates.
    PropVar(String),
}

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn bforall(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        let var = var.into();
        debug_assert!(!bound.contains_var(&var), "bound term mentions bound variable");
        Formula::BForall(var, bound, Box::new(body))
    }

    pub fn bexists(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        let var = var.into();
        debug_assert!(!bound.contains_var(&var), "bound term mentions bound variable");
        Formula::BExists(var, bound, Box::new(body))
    }

    pub fn atom(symbol: impl Into<String>, args: Vec<Term>, class: HierarchyClass) -> Formula {
        Formula::DefinedAtom {
            symbol: symbol.into(),
            args,
            class,
        }
    }

    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::PropVar(name.into())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Formula::Not(f) => f.free_vars(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
            Formula::BForall(v, bound, f) | Formula::BExists(v, bound, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s.extend(bound.free_vars());
                s
            }
            Formula::DefinedAtom { args, .. } => {
                let mut s = BTreeSet::new();
                for a in args {
                    s.extend(a.free_vars());
                }
                s
            }
            Formula::PropVar(_) => BTreeSet::new(),
        }
    }

    /// Every variable name occurring anywhere, free or bound. Used to pick
    /// fresh names.
    pub fn all_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Eq(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Formula::Not(f) => f.all_vars(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                let mut s = l.all_vars();
                s.extend(r.all_vars());
                s
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut s = f.all_vars();
                s.insert(v.clone());
                s
            }
            Formula::BForall(v, bound, f) | Formula::BExists(v, bound, f) => {
                let mut s = f.all_vars();
                s.insert(v.clone());
                s.extend(bound.free_vars());
                s
            }
            Formula::DefinedAtom { args, .. } => {
                let mut s = BTreeSet::new();
                for a in args {
                    s.extend(a.free_vars());
                }
                s
            }
            Formula::PropVar(_) => BTreeSet::new(),
        }
    }

    pub fn has_prop_vars(&self) -> bool {
        match self {
            Formula::PropVar(_) => true,
            Formula::Eq(_, _) | Formula::DefinedAtom { .. } => false,
            Formula::Not(f) => f.has_prop_vars(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.has_prop_vars() || r.has_prop_vars(),
            Formula::Forall(_, f)
            | Formula::Exists(_, f)
            | Formula::BForall(_, _, f)
            | Formula::BExists(_, _, f) => f.has_prop_vars(),
        }
    }

    /// A sentence has no free first-order variables and no propositional
    /// variables.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty() && !self.has_prop_vars()
    }

    /// Capture-avoiding substitution of `replacement` for every free
    /// occurrence of `var`. Bound occurrences are untouched; binders that
    /// would capture a free variable of `replacement` are renamed first.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Formula {
        match self {
            Formula::Eq(l, r) => {
                Formula::eq(l.substitute(var, replacement), r.substitute(var, replacement))
            }
            Formula::Not(f) => Formula::not(f.substitute(var, replacement)),
            Formula::And(l, r) => Formula::and(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Formula::Or(l, r) => Formula::or(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Formula::Implies(l, r) => Formula::implies(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Formula::Iff(l, r) => Formula::iff(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Formula::Forall(v, f) => match rebind(v, f, var, replacement) {
                None => self.clone(),
                Some((v, f)) => Formula::Forall(v, Box::new(f.substitute(var, replacement))),
            },
            Formula::Exists(v, f) => match rebind(v, f, var, replacement) {
                None => self.clone(),
                Some((v, f)) => Formula::Exists(v, Box::new(f.substitute(var, replacement))),
            },
            Formula::BForall(v, bound, f) => {
                let new_bound = bound.substitute(var, replacement);
                match rebind(v, f, var, replacement) {
                    None => Formula::BForall(v.clone(), new_bound, f.clone()),
                    Some((v, f)) => {
                        Formula::BForall(v, new_bound, Box::new(f.substitute(var, replacement)))
                    }
                }
            }
            Formula::BExists(v, bound, f) => {
                let new_bound = bound.substitute(var, replacement);
                match rebind(v, f, var, replacement) {
                    None => Formula::BExists(v.clone(), new_bound, f.clone()),
                    Some((v, f)) => {
                        Formula::BExists(v, new_bound, Box::new(f.substitute(var, replacement)))
                    }
                }
            }
            Formula::DefinedAtom {
                symbol,
                args,
                class,
            } => Formula::DefinedAtom {
                symbol: symbol.clone(),
                args: args.iter().map(|a| a.substitute(var, replacement)).collect(),
                class: *class,
            },
            Formula::PropVar(_) => self.clone(),
        }
    }

    /// Substitutes a closed term simultaneously for every free variable.
    /// A sentence comes back unchanged.
    pub fn substitute_all_free(&self, replacement: &Term) -> Formula {
        debug_assert!(replacement.is_closed(), "replacement term must be closed");
        let mut out = self.clone();
        for v in self.free_vars() {
            out = out.substitute(&v, replacement);
        }
        out
    }

    /// Collects `symbol -> (arity, declared class)` for every defined atom in
    /// the formula. Useful for re-parsing printed output with the original
    /// declarations.
    pub fn atom_signatures(&self) -> parse::AtomSignatures {
        let mut sigs = parse::AtomSignatures::new();
        self.collect_signatures(&mut sigs);
        sigs
    }

    fn collect_signatures(&self, sigs: &mut parse::AtomSignatures) {
        match self {
            Formula::DefinedAtom {
                symbol,
                args,
                class,
            } => {
                sigs.insert(symbol.clone(), (args.len(), *class));
            }
            Formula::Eq(_, _) | Formula::PropVar(_) => {}
            Formula::Not(f) => f.collect_signatures(sigs),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_signatures(sigs);
                r.collect_signatures(sigs);
            }
            Formula::Forall(_, f)
            | Formula::Exists(_, f)
            | Formula::BForall(_, _, f)
            | Formula::BExists(_, _, f) => f.collect_signatures(sigs),
        }
    }
}

/// Prepares a binder for substitution below it. Returns `None` when the
/// binder shadows the substituted variable (no free occurrences below, so
/// recursion must stop), otherwise the binder name and body to descend into,
/// renamed if keeping the name would capture a free variable of the
/// replacement term.
fn rebind(
    v: &str,
    body: &Formula,
    var: &str,
    replacement: &Term,
) -> Option<(String, Formula)> {
    if v == var {
        return None;
    }
    if replacement.contains_var(v) {
        let mut avoid = body.all_vars();
        avoid.extend(replacement.free_vars());
        avoid.insert(var.to_string());
        let fresh = fresh_var(v, &avoid);
        let renamed = body.substitute(v, &Term::var(fresh.clone()));
        Some((fresh, renamed))
    } else {
        Some((v.to_string(), body.clone()))
    }
}

/// Picks a name not in `avoid`, starting from `base` and appending a counter.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let mut i = 1u64;
    loop {
        let candidate = format!("{base}{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse::parse;

    #[test]
    fn numerals() {
        assert_eq!(numeral(0u32), Term::zero());
        assert_eq!(numeral(3u32), Term::succ(Term::succ(Term::succ(Term::zero()))));
        for n in 0u32..40 {
            assert_eq!(numeral(n).value_closed(), Some(BigUint::from(n)));
        }
    }

    #[test]
    fn substitution_examples() {
        let open = Formula::eq(Term::var("x"), Term::zero());
        assert_eq!(
            open.substitute("x", &numeral(1u32)),
            parse("S(0) = 0").unwrap()
        );
        let closed = parse("forall x. x = x").unwrap();
        assert_eq!(closed.substitute("x", &numeral(1u32)), closed);
        let atom = parse("prf_T(y, x)").unwrap();
        assert_eq!(
            atom.substitute("x", &numeral(2u32)),
            parse("prf_T(y, S(S(0)))").unwrap()
        );
    }

    #[test]
    fn simultaneous_substitution_examples() {
        let two = numeral(2u32);
        let f = Formula::eq(Term::var("x"), Term::var("y"));
        assert_eq!(
            f.substitute_all_free(&two),
            parse("S(S(0)) = S(S(0))").unwrap()
        );
        let sentence = parse("0 = 0").unwrap();
        assert_eq!(sentence.substitute_all_free(&two), sentence);
        let half_open = parse("exists y. x = y").unwrap();
        assert_eq!(
            half_open.substitute_all_free(&two),
            parse("exists y. S(S(0)) = y").unwrap()
        );
    }

    #[test]
    fn capture_is_avoided() {
        // substituting a term mentioning the binder renames the binder
        let f = parse("exists y. x = y").unwrap();
        let result = f.substitute("x", &Term::var("y"));
        match &result {
            Formula::Exists(binder, body) => {
                assert_ne!(binder, "y", "binder must be renamed");
                assert!(body.free_vars().contains("y"), "substituted variable stays free");
            }
            other => panic!("unexpected shape {other:?}"),
        }
        // the result means "something differs from y", not "something equals itself"
        assert!(result.free_vars().contains("y"));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let avoid: BTreeSet<String> =
            ["y", "y1", "y2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_var("y", &avoid), "y3");
        assert_eq!(fresh_var("z", &avoid), "z");
    }
}
