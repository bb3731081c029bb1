//! Univariate polynomial view of terms, used to decide equalities in one
//! variable exactly: terms over zero, successor, addition, and
//! multiplication denote polynomials with nonnegative integer coefficients.

use super::support::Support;
use crate::formula::Term;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Coefficients in ascending order of degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    coeffs: Vec<BigUint>,
}

impl Poly {
    fn constant(n: BigUint) -> Poly {
        Poly { coeffs: vec![n] }.trimmed()
    }

    fn variable() -> Poly {
        Poly {
            coeffs: vec![BigUint::zero(), BigUint::one()],
        }
    }

    fn trimmed(mut self) -> Poly {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigUint::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly { coeffs }.trimmed()
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly { coeffs: vec![] };
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }.trimmed()
    }

    fn eval(&self, x: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn coeff(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }
}

/// Reads a term as a polynomial in `var`; `None` if any other variable
/// occurs.
pub(crate) fn poly_of(t: &Term, var: &str) -> Option<Poly> {
    match t {
        Term::Num(n) => Some(Poly::constant(n.clone())),
        Term::Var(v) if v == var => Some(Poly::variable()),
        Term::Var(_) => None,
        Term::Succ(inner) => Some(poly_of(inner, var)?.add(&Poly::constant(BigUint::one()))),
        Term::Add(l, r) => Some(poly_of(l, var)?.add(&poly_of(r, var)?)),
        Term::Mul(l, r) => Some(poly_of(l, var)?.mul(&poly_of(r, var)?)),
    }
}

/// Finite-support analysis of `l = r` as a function of `var`.
///
/// Handled cases: identical polynomials (true everywhere), and pairs whose
/// difference is monotone in the nonconstant part (at most one solution,
/// found by binary search). Mixed-sign coefficient differences are left to
/// the fuel-bounded scan.
pub(crate) fn eq_support(l: &Term, r: &Term, var: &str) -> Option<Support> {
    let p = poly_of(l, var)?;
    let q = poly_of(r, var)?;
    if p == q {
        return Some(Support {
            exceptions: vec![],
            limit: true,
        });
    }
    let n = p.degree_bound().max(q.degree_bound());
    let mut nonneg = true;
    let mut nonpos = true;
    for i in 1..n {
        let d = BigInt::from(p.coeff(i)) - BigInt::from(q.coeff(i));
        match d.sign() {
            Sign::Plus => nonpos = false,
            Sign::Minus => nonneg = false,
            Sign::NoSign => {}
        }
    }
    let (grows, shrinks) = if nonneg {
        (p, q)
    } else if nonpos {
        (q, p)
    } else {
        return None;
    };
    // grows - shrinks has nonnegative coefficients at every positive degree;
    // if they are all zero the polynomials differ only in the constant term.
    let strict = (1..n).any(|i| grows.coeff(i) > shrinks.coeff(i));
    if !strict {
        // constant, nonzero difference
        return Some(Support {
            exceptions: vec![],
            limit: false,
        });
    }
    // grows(y) - shrinks(y) is strictly increasing, so there is at most one
    // solution of grows(y) = shrinks(y).
    let exceptions = match grows.eval(&BigUint::zero()).cmp(&shrinks.eval(&BigUint::zero())) {
        std::cmp::Ordering::Equal => vec![BigUint::zero()],
        std::cmp::Ordering::Greater => vec![],
        std::cmp::Ordering::Less => {
            // find the least y with grows(y) >= shrinks(y)
            let mut hi = BigUint::one();
            while grows.eval(&hi) < shrinks.eval(&hi) {
                hi = &hi * BigUint::from(2u32);
            }
            let mut lo = BigUint::zero();
            while &lo + BigUint::one() < hi {
                let mid = (&lo + &hi) / BigUint::from(2u32);
                if grows.eval(&mid) < shrinks.eval(&mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if grows.eval(&hi) == shrinks.eval(&hi) {
                vec![hi]
            } else {
                vec![]
            }
        }
    };
    Some(Support {
        exceptions,
        limit: false,
    })
}
