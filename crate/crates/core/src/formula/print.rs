//! Precedence-aware printing. `parse(print(f))` is structurally `f`.

use super::{Formula, Term};
use num_bigint::BigUint;
use std::fmt;

/// Numerals up to this value render as iterated `S(...)`; larger ones as
/// decimal literals (Gödel-code numerals run to hundreds of digits).
const SUCC_CHAIN_MAX: u32 = 4;

pub fn print(f: &Formula) -> String {
    f.to_string()
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, out, 0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, out, 0, true)
    }
}

// Term levels: `+` = 1, `*` = 2, atoms = 3; both operators left-associative.
fn fmt_term(t: &Term, out: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
    match t {
        Term::Num(n) => fmt_numeral(n, out),
        Term::Var(v) => write!(out, "{v}"),
        Term::Succ(inner) => {
            write!(out, "S(")?;
            fmt_term(inner, out, 0)?;
            write!(out, ")")
        }
        Term::Add(l, r) => {
            let wrap = 1 < ctx;
            if wrap {
                write!(out, "(")?;
            }
            fmt_term(l, out, 1)?;
            write!(out, " + ")?;
            fmt_term(r, out, 2)?;
            if wrap {
                write!(out, ")")?;
            }
            Ok(())
        }
        Term::Mul(l, r) => {
            let wrap = 2 < ctx;
            if wrap {
                write!(out, "(")?;
            }
            fmt_term(l, out, 2)?;
            write!(out, " * ")?;
            fmt_term(r, out, 3)?;
            if wrap {
                write!(out, ")")?;
            }
            Ok(())
        }
    }
}

fn fmt_numeral(n: &BigUint, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Ok(small) = u32::try_from(n) {
        if small <= SUCC_CHAIN_MAX {
            for _ in 0..small {
                write!(out, "S(")?;
            }
            write!(out, "0")?;
            for _ in 0..small {
                write!(out, ")")?;
            }
            return Ok(());
        }
    }
    write!(out, "{n}")
}

// Formula levels: `<->` = 1, `->` = 2, `|` = 3, `&` = 4, `~` = 5, atoms = 6.
// Binary connectives are right-associative. Quantifiers extend to the end of
// the formula, so a quantified subformula prints bare only at the right edge
// of its context and is parenthesized elsewhere.
fn fmt_formula(f: &Formula, out: &mut fmt::Formatter<'_>, ctx: u8, rightmost: bool) -> fmt::Result {
    match f {
        Formula::Eq(l, r) => {
            fmt_term(l, out, 0)?;
            write!(out, " = ")?;
            fmt_term(r, out, 0)
        }
        Formula::DefinedAtom { symbol, args, .. } => {
            write!(out, "{symbol}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(out, ", ")?;
                }
                fmt_term(a, out, 0)?;
            }
            write!(out, ")")
        }
        Formula::PropVar(name) => write!(out, "{name}"),
        Formula::Not(inner) => {
            write!(out, "~")?;
            fmt_formula(inner, out, 5, rightmost)
        }
        Formula::And(l, r) => fmt_binary(out, l, "&", r, 4, ctx, rightmost),
        Formula::Or(l, r) => fmt_binary(out, l, "|", r, 3, ctx, rightmost),
        Formula::Implies(l, r) => fmt_binary(out, l, "->", r, 2, ctx, rightmost),
        Formula::Iff(l, r) => fmt_binary(out, l, "<->", r, 1, ctx, rightmost),
        Formula::Forall(v, body) => fmt_quantifier(out, "forall", v, None, body, rightmost),
        Formula::Exists(v, body) => fmt_quantifier(out, "exists", v, None, body, rightmost),
        Formula::BForall(v, bound, body) => {
            fmt_quantifier(out, "forall", v, Some(bound), body, rightmost)
        }
        Formula::BExists(v, bound, body) => {
            fmt_quantifier(out, "exists", v, Some(bound), body, rightmost)
        }
    }
}

fn fmt_binary(
    out: &mut fmt::Formatter<'_>,
    l: &Formula,
    op: &str,
    r: &Formula,
    level: u8,
    ctx: u8,
    rightmost: bool,
) -> fmt::Result {
    let wrap = level < ctx;
    if wrap {
        write!(out, "(")?;
    }
    fmt_formula(l, out, level + 1, false)?;
    write!(out, " {op} ")?;
    fmt_formula(r, out, level, rightmost || wrap)?;
    if wrap {
        write!(out, ")")?;
    }
    Ok(())
}

fn fmt_quantifier(
    out: &mut fmt::Formatter<'_>,
    kw: &str,
    v: &str,
    bound: Option<&Term>,
    body: &Formula,
    rightmost: bool,
) -> fmt::Result {
    if !rightmost {
        write!(out, "(")?;
    }
    write!(out, "{kw} {v}")?;
    if let Some(b) = bound {
        write!(out, " < ")?;
        fmt_term(b, out, 0)?;
    }
    write!(out, ". ")?;
    fmt_formula(body, out, 0, true)?;
    if !rightmost {
        write!(out, ")")?;
    }
    Ok(())
}
