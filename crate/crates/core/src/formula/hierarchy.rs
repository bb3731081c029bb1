//! Arithmetical-hierarchy classes and their partial order.

use std::fmt;
use std::str::FromStr;

/// A level of the arithmetical hierarchy: `delta0`, `sigma n`, or `pi n`
/// with `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HierarchyClass {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl HierarchyClass {
    pub fn sigma(n: u32) -> HierarchyClass {
        assert!(n >= 1, "sigma level must be at least 1");
        HierarchyClass::Sigma(n)
    }

    pub fn pi(n: u32) -> HierarchyClass {
        assert!(n >= 1, "pi level must be at least 1");
        HierarchyClass::Pi(n)
    }

    /// Number of unbounded quantifier-block alternations.
    pub fn level(&self) -> u32 {
        match self {
            HierarchyClass::Delta0 => 0,
            HierarchyClass::Sigma(n) | HierarchyClass::Pi(n) => *n,
        }
    }

    /// The partial order: `delta0` below everything, `sigma n <= sigma m` and
    /// `pi n <= pi m` for `n <= m`, and classes of opposite polarity compare
    /// only across a strict level increase.
    pub fn le(&self, other: &HierarchyClass) -> bool {
        use HierarchyClass::*;
        match (self, other) {
            (Delta0, _) => true,
            (_, Delta0) => false,
            (Sigma(a), Sigma(b)) | (Pi(a), Pi(b)) => a <= b,
            (Sigma(a), Pi(b)) | (Pi(a), Sigma(b)) => a < b,
        }
    }

    /// Swaps `sigma` and `pi`; `delta0` is self-dual.
    pub fn dual(&self) -> HierarchyClass {
        match self {
            HierarchyClass::Delta0 => HierarchyClass::Delta0,
            HierarchyClass::Sigma(n) => HierarchyClass::Pi(*n),
            HierarchyClass::Pi(n) => HierarchyClass::Sigma(*n),
        }
    }

    /// Least upper bound, with the one ambiguous case (`sigma n` against
    /// `pi n`) resolved to `sigma (n+1)`: both `sigma (n+1)` and `pi (n+1)`
    /// are minimal upper bounds, and we pin the existential-first prenexing.
    pub fn join(&self, other: &HierarchyClass) -> HierarchyClass {
        use HierarchyClass::*;
        match (self, other) {
            (Delta0, x) | (x, Delta0) => *x,
            (Sigma(a), Sigma(b)) => Sigma(*a.max(b)),
            (Pi(a), Pi(b)) => Pi(*a.max(b)),
            (Sigma(a), Pi(b)) | (Pi(b), Sigma(a)) => {
                if a < b {
                    Pi(*b)
                } else if b < a {
                    Sigma(*a)
                } else {
                    Sigma(a + 1)
                }
            }
        }
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyClass::Delta0 => write!(f, "delta0"),
            HierarchyClass::Sigma(n) => write!(f, "sigma{n}"),
            HierarchyClass::Pi(n) => write!(f, "pi{n}"),
        }
    }
}

impl FromStr for HierarchyClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "delta0" {
            return Ok(HierarchyClass::Delta0);
        }
        if let Some(rest) = s.strip_prefix("sigma") {
            let n: u32 = rest.parse().map_err(|_| format!("bad class level: {s}"))?;
            if n == 0 {
                return Err("sigma level must be at least 1".to_string());
            }
            return Ok(HierarchyClass::Sigma(n));
        }
        if let Some(rest) = s.strip_prefix("pi") {
            let n: u32 = rest.parse().map_err(|_| format!("bad class level: {s}"))?;
            if n == 0 {
                return Err("pi level must be at least 1".to_string());
            }
            return Ok(HierarchyClass::Pi(n));
        }
        Err(format!("unknown hierarchy class: {s} (expected delta0, sigmaN, or piN)"))
    }
}
