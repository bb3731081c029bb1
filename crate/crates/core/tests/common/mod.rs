//! Shared test infrastructure: deterministic AST generators, an
//! independently written naive evaluator and substitution routine (oracles),
//! and fixture theories.

#![allow(dead_code)]

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use selfref_core::*;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy)]
pub struct GenConfig {
    pub max_depth: u32,
    pub max_numeral: u64,
    pub allow_atoms: bool,
    pub allow_unbounded: bool,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            max_depth: 5,
            max_numeral: 6,
            allow_atoms: true,
            allow_unbounded: true,
        }
    }
}

/// Defined-atom pool with fixed signatures, so a symbol's declared class is
/// consistent within and across generated formulas.
const ATOM_POOL: &[(&str, usize, HierarchyClass)] = &[
    ("p_dec", 1, HierarchyClass::Delta0),
    ("q_rec", 2, HierarchyClass::Sigma(1)),
    ("r_co", 1, HierarchyClass::Pi(1)),
    ("w_two", 2, HierarchyClass::Sigma(2)),
];

pub fn gen_term(rng: &mut ChaCha8Rng, env: &[String], depth: u32, cfg: &GenConfig) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        if !env.is_empty() && rng.gen_bool(0.6) {
            let v = env[rng.gen_range(0..env.len())].clone();
            Term::var(v)
        } else {
            Term::num(rng.gen_range(0..=cfg.max_numeral))
        }
    } else {
        match rng.gen_range(0..3) {
            0 => Term::succ(gen_term(rng, env, depth - 1, cfg)),
            1 => Term::add(
                gen_term(rng, env, depth - 1, cfg),
                gen_term(rng, env, depth - 1, cfg),
            ),
            _ => Term::mul(
                gen_term(rng, env, depth - 1, cfg),
                gen_term(rng, env, depth - 1, cfg),
            ),
        }
    }
}

pub fn gen_formula(
    rng: &mut ChaCha8Rng,
    env: &mut Vec<String>,
    depth: u32,
    cfg: &GenConfig,
) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        if cfg.allow_atoms && rng.gen_bool(0.25) {
            let (symbol, arity, class) = ATOM_POOL[rng.gen_range(0..ATOM_POOL.len())];
            let args = (0..arity).map(|_| gen_term(rng, env, 2, cfg)).collect();
            return Formula::atom(symbol, args, class);
        }
        return Formula::eq(gen_term(rng, env, 2, cfg), gen_term(rng, env, 2, cfg));
    }
    match rng.gen_range(0..8) {
        0 => Formula::not(gen_formula(rng, env, depth - 1, cfg)),
        1 => Formula::and(
            gen_formula(rng, env, depth - 1, cfg),
            gen_formula(rng, env, depth - 1, cfg),
        ),
        2 => Formula::or(
            gen_formula(rng, env, depth - 1, cfg),
            gen_formula(rng, env, depth - 1, cfg),
        ),
        3 => Formula::implies(
            gen_formula(rng, env, depth - 1, cfg),
            gen_formula(rng, env, depth - 1, cfg),
        ),
        4 => Formula::iff(
            gen_formula(rng, env, depth - 1, cfg),
            gen_formula(rng, env, depth - 1, cfg),
        ),
        k => {
            let var = format!("v{}", env.len());
            let universal = k % 2 == 0;
            let bounded = !cfg.allow_unbounded || rng.gen_bool(0.5);
            let bound = bounded.then(|| gen_term(rng, env, 1, cfg));
            env.push(var.clone());
            let body = gen_formula(rng, env, depth - 1, cfg);
            env.pop();
            match (universal, bound) {
                (true, None) => Formula::forall(var, body),
                (false, None) => Formula::exists(var, body),
                (true, Some(b)) => Formula::bforall(var, b, body),
                (false, Some(b)) => Formula::bexists(var, b, body),
            }
        }
    }
}

pub fn gen_sentence(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Formula {
    let mut env = Vec::new();
    gen_formula(rng, &mut env, cfg.max_depth, cfg)
}

/// A formula whose free variables are exactly `{x}`.
pub fn gen_one_free_var(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Formula {
    loop {
        let mut env = vec!["x".to_string()];
        let f = gen_formula(rng, &mut env, cfg.max_depth, cfg);
        let free = f.free_vars();
        if free.len() == 1 && free.contains("x") {
            return f;
        }
    }
}

/// A propositional template over a subset of `p1..p{max_vars}`.
pub fn gen_template(rng: &mut ChaCha8Rng, max_vars: usize, depth: u32) -> PropTemplate {
    fn go(rng: &mut ChaCha8Rng, max_vars: usize, depth: u32) -> Formula {
        if depth == 0 || rng.gen_bool(0.35) {
            return Formula::prop(format!("p{}", rng.gen_range(1..=max_vars)));
        }
        match rng.gen_range(0..5) {
            0 => Formula::not(go(rng, max_vars, depth - 1)),
            1 => Formula::and(go(rng, max_vars, depth - 1), go(rng, max_vars, depth - 1)),
            2 => Formula::or(go(rng, max_vars, depth - 1), go(rng, max_vars, depth - 1)),
            3 => Formula::implies(go(rng, max_vars, depth - 1), go(rng, max_vars, depth - 1)),
            _ => Formula::iff(go(rng, max_vars, depth - 1), go(rng, max_vars, depth - 1)),
        }
    }
    PropTemplate::new(go(rng, max_vars, depth)).expect("generator emits propositional formulas")
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Second, separately written simultaneous substitution of a closed term for
/// all free variables: tracks the bound set explicitly instead of reusing
/// the library's capture machinery.
pub fn oracle_substitute_all_free(f: &Formula, replacement: &Term) -> Formula {
    fn term_go(t: &Term, replacement: &Term, bound: &BTreeSet<String>) -> Term {
        match t {
            Term::Num(_) => t.clone(),
            Term::Var(v) => {
                if bound.contains(v) {
                    t.clone()
                } else {
                    replacement.clone()
                }
            }
            Term::Succ(inner) => Term::succ(term_go(inner, replacement, bound)),
            Term::Add(l, r) => Term::add(
                term_go(l, replacement, bound),
                term_go(r, replacement, bound),
            ),
            Term::Mul(l, r) => Term::mul(
                term_go(l, replacement, bound),
                term_go(r, replacement, bound),
            ),
        }
    }
    fn go(f: &Formula, replacement: &Term, bound: &BTreeSet<String>) -> Formula {
        match f {
            Formula::Eq(l, r) => Formula::eq(
                term_go(l, replacement, bound),
                term_go(r, replacement, bound),
            ),
            Formula::Not(g) => Formula::not(go(g, replacement, bound)),
            Formula::And(l, r) => {
                Formula::and(go(l, replacement, bound), go(r, replacement, bound))
            }
            Formula::Or(l, r) => {
                Formula::or(go(l, replacement, bound), go(r, replacement, bound))
            }
            Formula::Implies(l, r) => {
                Formula::implies(go(l, replacement, bound), go(r, replacement, bound))
            }
            Formula::Iff(l, r) => {
                Formula::iff(go(l, replacement, bound), go(r, replacement, bound))
            }
            Formula::Forall(v, g) => {
                let mut inner = bound.clone();
                inner.insert(v.clone());
                Formula::Forall(v.clone(), Box::new(go(g, replacement, &inner)))
            }
            Formula::Exists(v, g) => {
                let mut inner = bound.clone();
                inner.insert(v.clone());
                Formula::Exists(v.clone(), Box::new(go(g, replacement, &inner)))
            }
            Formula::BForall(v, b, g) => {
                let new_bound_term = term_go(b, replacement, bound);
                let mut inner = bound.clone();
                inner.insert(v.clone());
                Formula::BForall(
                    v.clone(),
                    new_bound_term,
                    Box::new(go(g, replacement, &inner)),
                )
            }
            Formula::BExists(v, b, g) => {
                let new_bound_term = term_go(b, replacement, bound);
                let mut inner = bound.clone();
                inner.insert(v.clone());
                Formula::BExists(
                    v.clone(),
                    new_bound_term,
                    Box::new(go(g, replacement, &inner)),
                )
            }
            Formula::DefinedAtom {
                symbol,
                args,
                class,
            } => Formula::DefinedAtom {
                symbol: symbol.clone(),
                args: args
                    .iter()
                    .map(|a| term_go(a, replacement, bound))
                    .collect(),
                class: *class,
            },
            Formula::PropVar(_) => f.clone(),
        }
    }
    go(f, replacement, &BTreeSet::new())
}

/// Independently written naive evaluator: pure recursive scan with Kleene
/// combination, no exactness analysis of any kind. Returns `None` whenever a
/// scan cannot conclude (every universal without a found counterexample,
/// every existential without a found witness).
pub fn naive_eval(f: &Formula, bound: u64) -> Option<bool> {
    fn term_val(t: &Term) -> BigUint {
        match t {
            Term::Num(n) => n.clone(),
            Term::Var(_) => panic!("naive evaluator reached an open term"),
            Term::Succ(inner) => term_val(inner) + 1u32,
            Term::Add(l, r) => term_val(l) + term_val(r),
            Term::Mul(l, r) => term_val(l) * term_val(r),
        }
    }
    fn k_and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
        match (a, b) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }
    fn k_not(a: Option<bool>) -> Option<bool> {
        a.map(|x| !x)
    }
    fn k_or(a: Option<bool>, b: Option<bool>) -> Option<bool> {
        k_not(k_and(k_not(a), k_not(b)))
    }
    match f {
        Formula::Eq(l, r) => Some(term_val(l) == term_val(r)),
        Formula::Not(g) => k_not(naive_eval(g, bound)),
        Formula::And(l, r) => k_and(naive_eval(l, bound), naive_eval(r, bound)),
        Formula::Or(l, r) => k_or(naive_eval(l, bound), naive_eval(r, bound)),
        Formula::Implies(l, r) => k_or(k_not(naive_eval(l, bound)), naive_eval(r, bound)),
        Formula::Iff(l, r) => match (naive_eval(l, bound), naive_eval(r, bound)) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        },
        Formula::Forall(v, g) => {
            for k in 0..bound {
                let inst = g.substitute(v, &Term::num(k));
                if naive_eval(&inst, bound) == Some(false) {
                    return Some(false);
                }
            }
            None
        }
        Formula::Exists(v, g) => {
            for k in 0..bound {
                let inst = g.substitute(v, &Term::num(k));
                if naive_eval(&inst, bound) == Some(true) {
                    return Some(true);
                }
            }
            None
        }
        Formula::BForall(v, b, g) => {
            let limit = term_val(b);
            if limit > BigUint::from(bound) {
                return None;
            }
            let limit = u64::try_from(&limit).ok()?;
            let mut acc = Some(true);
            for k in 0..limit {
                let inst = g.substitute(v, &Term::num(k));
                match naive_eval(&inst, bound) {
                    Some(false) => return Some(false),
                    Some(true) => {}
                    None => acc = None,
                }
            }
            acc
        }
        Formula::BExists(v, b, g) => {
            let limit = term_val(b);
            if limit > BigUint::from(bound) {
                return None;
            }
            let limit = u64::try_from(&limit).ok()?;
            let mut acc = Some(false);
            for k in 0..limit {
                let inst = g.substitute(v, &Term::num(k));
                match naive_eval(&inst, bound) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => acc = None,
                }
            }
            acc
        }
        Formula::DefinedAtom { .. } | Formula::PropVar(_) => None,
    }
}

/// Brute-force truth-table evaluation of a propositional template body,
/// written independently of the library's template evaluator.
pub fn naive_template_eval(f: &Formula, assignment: &dyn Fn(&str) -> bool) -> bool {
    match f {
        Formula::PropVar(p) => assignment(p),
        Formula::Not(g) => !naive_template_eval(g, assignment),
        Formula::And(l, r) => {
            naive_template_eval(l, assignment) && naive_template_eval(r, assignment)
        }
        Formula::Or(l, r) => {
            naive_template_eval(l, assignment) || naive_template_eval(r, assignment)
        }
        Formula::Implies(l, r) => {
            !naive_template_eval(l, assignment) || naive_template_eval(r, assignment)
        }
        Formula::Iff(l, r) => {
            naive_template_eval(l, assignment) == naive_template_eval(r, assignment)
        }
        _ => panic!("not a propositional template"),
    }
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

pub fn sent(text: &str) -> Formula {
    parse(text).unwrap()
}

/// At least 20 syntactically consistent finite theories, including the empty
/// one and some with false (but unrefuted) theorems.
pub fn consistent_finite_fixtures() -> Vec<Theory> {
    let lists: Vec<Vec<&str>> = vec![
        vec![],
        vec!["0 = 0"],
        vec!["0 = 0", "S(0) = S(0)"],
        vec!["forall x. x = x"],
        vec!["forall x. x + 0 = x", "0 = 0"],
        vec!["~(S(0) = 0)"],
        vec!["S(0) = 0"],
        vec!["0 = S(0)", "0 = 0"],
        vec!["exists y. y = S(0)"],
        vec!["forall x. exists y. y = x + x"],
        vec!["0 = 0", "~(S(0) = 0)", "S(0) = S(0)", "S(S(0)) = S(S(0))"],
        vec!["S(0) + S(0) = S(S(0))", "0 * S(0) = 0"],
        vec!["forall z < S(S(S(0))). z + z = z * S(S(0))"],
        vec!["exists y. y + y = S(S(S(S(0))))", "0 = 0"],
        vec!["~(0 = S(0))", "~(0 = S(S(0)))", "~(0 = S(S(S(0))))"],
    ];
    let mut out: Vec<Theory> = lists
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            Theory::finite(&format!("T{i}"), l.into_iter().map(sent).collect()).unwrap()
        })
        .collect();
    for k in 0..7u64 {
        let phi = Formula::eq(Term::num(k), Term::num(k));
        out.push(Theory::finite(&format!("N{k}"), vec![phi]).unwrap());
    }
    for t in &out {
        assert_eq!(t.finite_consistent(), Some(true), "fixture {}", t.name());
    }
    assert!(out.len() >= 20);
    out
}

/// Ten false universal sentences of the lowest level, each decided false by
/// the evaluator.
pub fn false_pi1_sentences() -> Vec<Formula> {
    [
        "forall x. ~(x = x)",
        "forall x. x = S(x)",
        "forall x. x + x = S(0)",
        "forall x. x * x = S(S(0))",
        "forall x. S(x) = S(S(x))",
        "forall x. forall z < S(x). z + z = x",
        "forall x. x = 0",
        "forall x. ~(x + 0 = x)",
        "forall y. y * S(y) = S(y)",
        "forall x. x + S(0) = x",
    ]
    .iter()
    .map(|s| sent(s))
    .collect()
}

/// All orderings of a slice; sizes stay tiny (at most 5! here).
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let chosen = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, chosen.clone());
            out.push(tail);
        }
    }
    out
}

/// All subsets of a slice.
pub fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for item in items {
        let with: Vec<Vec<T>> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.push(item.clone());
                s
            })
            .collect();
        out.extend(with);
    }
    out
}

pub fn registry_for(theories: &[&Theory]) -> DefinedAtomRegistry {
    let mut reg = DefinedAtomRegistry::standard();
    for t in theories {
        reg.register_theory(t).unwrap();
    }
    reg
}

/// The provability predicate instantiated at a sentence's code.
pub fn pr_at(theory: &Theory, phi: &Formula) -> Formula {
    pr_formula(theory).substitute("x", &goedel_numeral(phi).unwrap())
}

/// The Rosser provability predicate instantiated at a sentence's code.
pub fn rpr_at(theory: &Theory, phi: &Formula) -> Formula {
    rosser_pr_formula(theory).substitute("x", &goedel_numeral(phi).unwrap())
}
