//! Gödel numbering of terms and formulas.
//!
//! The scheme is tag-and-pair: every node maps to `pair(tag, payload)` and
//! payloads are built recursively. The pairing is a length-prefixed binary
//! concatenation (see [`pair`]), chosen because the code of a pair is only
//! additively larger than its parts: diagonal sentences contain the numeral
//! of their own template's code, and any quadratic pairing would square that
//! code once per surrounding node, pushing even small fixed points to
//! megabit codes. The scheme is pinned: golden codes and the `codec-spec`
//! command output depend on it, and any change is a breaking change of the
//! numbering. See [`codec_spec`] for the full table.
//!
//! Numerals code by value in a single node, so the numeral of a huge code
//! stays cheap to encode, and variables code by name, so encoding is
//! injective on the nose and decoding restores the exact source formula.
//! Not every natural is a valid code; validity is decided during decoding.

use crate::formula::{Formula, HierarchyClass, Term};
use crate::formula::{parse::is_identifier, template::PropTemplate};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Codec version reported by [`codec_spec`]; bump on any change to the tag
/// table or pairing conventions.
pub const CODEC_VERSION: u32 = 1;

/// An arbitrary-precision natural playing the role of a Gödel code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(BigUint);

impl Code {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }
}

impl From<BigUint> for Code {
    fn from(v: BigUint) -> Code {
        Code(v)
    }
}

impl From<u64> for Code {
    fn from(v: u64) -> Code {
        Code(BigUint::from(v))
    }
}

impl From<Code> for BigUint {
    fn from(c: Code) -> BigUint {
        c.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("propositional variables have no Gödel code; instantiate the template first")]
    PropVar,
    #[error("invalid code {code}: {reason}")]
    InvalidCode { code: BigUint, reason: String },
    #[error("context template must have exactly one variable, found {0}")]
    ContextArity(usize),
}

fn invalid(code: &BigUint, reason: impl Into<String>) -> CodingError {
    CodingError::InvalidCode {
        code: code.clone(),
        reason: reason.into(),
    }
}

// ---------------------------------------------------------------------------
// Pairing and primitive codings
// ---------------------------------------------------------------------------
//
// Naturals are identified with finite bit strings through the standard
// bijection: `n` corresponds to the binary digits of `n + 1` with the
// leading 1 removed (0 is the empty string, 1 is "0", 2 is "1", 3 is "00",
// and so on). A string is handled as a value together with an explicit bit
// length, most significant bit first.

/// A bit string: `value < 2^len`, read most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    value: BigUint,
    len: u64,
}

impl Bits {
    fn from_nat(n: &BigUint) -> Bits {
        let shifted = n + BigUint::one();
        let len = shifted.bits() - 1;
        let value = shifted - (BigUint::one() << len);
        Bits { value, len }
    }

    fn to_nat(&self) -> BigUint {
        (BigUint::one() << self.len) + &self.value - BigUint::one()
    }

    fn concat(self, other: &Bits) -> Bits {
        Bits {
            value: (self.value << other.len) | other.value.clone(),
            len: self.len + other.len,
        }
    }

    fn ones(count: u64) -> Bits {
        Bits {
            value: (BigUint::one() << count) - BigUint::one(),
            len: count,
        }
    }

    fn zero_bit() -> Bits {
        Bits {
            value: BigUint::zero(),
            len: 1,
        }
    }
}

/// Consumes a bit string from the most significant end.
struct BitReader {
    value: BigUint,
    remaining: u64,
}

impl BitReader {
    fn new(bits: Bits) -> BitReader {
        BitReader {
            value: bits.value,
            remaining: bits.len,
        }
    }

    fn take(&mut self, count: u64) -> Option<BigUint> {
        if count > self.remaining {
            return None;
        }
        self.remaining -= count;
        let high = &self.value >> self.remaining;
        self.value -= &high << self.remaining;
        Some(high)
    }

    fn take_bit(&mut self) -> Option<bool> {
        self.take(1).map(|b| b.is_one())
    }
}

/// Length-prefixed concatenation pairing. With `s(n)` the bit string of `n`
/// and `L = |s(a)|`, the pair is the natural of the string
///
/// ```text
/// 1^|s(L)|  0  s(L)  s(a)  s(b)
/// ```
///
/// so `pair(a, b)` costs only the bits of `a` and `b` plus two lengths of a
/// length. The pairing is injective and strictly monotone in both arguments
/// (the result has more bits than either part); naturals outside its image
/// simply fail to unpair.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let sa = Bits::from_nat(a);
    let sb = Bits::from_nat(b);
    let slen = Bits::from_nat(&BigUint::from(sa.len));
    Bits::ones(slen.len)
        .concat(&Bits::zero_bit())
        .concat(&slen)
        .concat(&sa)
        .concat(&sb)
        .to_nat()
}

/// Inverse of [`pair`] on its image; `None` elsewhere.
pub fn unpair(z: &BigUint) -> Option<(BigUint, BigUint)> {
    let mut reader = BitReader::new(Bits::from_nat(z));
    let mut len_len = 0u64;
    while reader.take_bit()? {
        len_len += 1;
    }
    let len_bits = Bits {
        value: reader.take(len_len)?,
        len: len_len,
    };
    let a_len = u64::try_from(&len_bits.to_nat()).ok()?;
    let a_bits = Bits {
        value: reader.take(a_len)?,
        len: a_len,
    };
    let b_len = reader.remaining;
    let b_bits = Bits {
        value: reader.take(b_len)?,
        len: b_len,
    };
    Some((a_bits.to_nat(), b_bits.to_nat()))
}

/// Lists: the empty list is 0, `cons(h, t)` is `pair(h, t) + 1`. Also used
/// to code derivations (lists of formula codes) in calculus backends.
pub fn encode_list(items: &[BigUint]) -> BigUint {
    let mut acc = BigUint::zero();
    for item in items.iter().rev() {
        acc = pair(item, &acc) + BigUint::one();
    }
    acc
}

/// Decodes a coded list; `None` when some cons cell fails to unpair.
pub fn decode_list(z: &BigUint) -> Option<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut rest = z.clone();
    while !rest.is_zero() {
        let (h, t) = unpair(&(rest - BigUint::one()))?;
        out.push(h);
        rest = t;
    }
    Some(out)
}

/// Identifiers code as the big-endian base-256 value of their bytes.
fn encode_name(name: &str) -> BigUint {
    BigUint::from_bytes_be(name.as_bytes())
}

fn decode_name(z: &BigUint, code: &BigUint) -> Result<String, CodingError> {
    if z.is_zero() {
        return Err(invalid(code, "empty identifier"));
    }
    let bytes = z.to_bytes_be();
    let name = String::from_utf8(bytes).map_err(|_| invalid(code, "identifier is not UTF-8"))?;
    if !is_identifier(&name) {
        return Err(invalid(code, format!("'{name}' is not a valid identifier")));
    }
    Ok(name)
}

/// Hierarchy classes: `delta0` is 0, `sigma n` is `2n - 1`, `pi n` is `2n`.
fn encode_class(c: &HierarchyClass) -> BigUint {
    match c {
        HierarchyClass::Delta0 => BigUint::zero(),
        HierarchyClass::Sigma(n) => BigUint::from(2 * n - 1),
        HierarchyClass::Pi(n) => BigUint::from(2 * n),
    }
}

fn decode_class(z: &BigUint, code: &BigUint) -> Result<HierarchyClass, CodingError> {
    let k = u32::try_from(z).map_err(|_| invalid(code, "hierarchy class index too large"))?;
    Ok(if k == 0 {
        HierarchyClass::Delta0
    } else if k % 2 == 1 {
        HierarchyClass::Sigma(k.div_ceil(2))
    } else {
        HierarchyClass::Pi(k / 2)
    })
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

const TERM_NUMERAL: u32 = 0;
const TERM_VAR: u32 = 1;
const TERM_SUCC: u32 = 2;
const TERM_ADD: u32 = 3;
const TERM_MUL: u32 = 4;

fn encode_term(t: &Term) -> BigUint {
    match t {
        Term::Num(n) => pair(&BigUint::from(TERM_NUMERAL), n),
        Term::Var(v) => pair(&BigUint::from(TERM_VAR), &encode_name(v)),
        Term::Succ(inner) => pair(&BigUint::from(TERM_SUCC), &encode_term(inner)),
        Term::Add(l, r) => pair(
            &BigUint::from(TERM_ADD),
            &pair(&encode_term(l), &encode_term(r)),
        ),
        Term::Mul(l, r) => pair(
            &BigUint::from(TERM_MUL),
            &pair(&encode_term(l), &encode_term(r)),
        ),
    }
}

fn unpair_or(z: &BigUint, code: &BigUint) -> Result<(BigUint, BigUint), CodingError> {
    unpair(z).ok_or_else(|| invalid(code, "not in the image of the pairing"))
}

fn decode_term(z: &BigUint, code: &BigUint) -> Result<Term, CodingError> {
    let (tag, payload) = unpair_or(z, code)?;
    let tag = u32::try_from(&tag).map_err(|_| invalid(code, "term tag too large"))?;
    match tag {
        TERM_NUMERAL => Ok(Term::Num(payload)),
        TERM_VAR => Ok(Term::Var(decode_name(&payload, code)?)),
        TERM_SUCC => {
            let inner = decode_term(&payload, code)?;
            if inner.is_numeral() {
                // Canonical form stores successor chains as a single numeral.
                return Err(invalid(code, "successor of a numeral is not in canonical form"));
            }
            Ok(Term::Succ(Box::new(inner)))
        }
        TERM_ADD => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Term::add(decode_term(&l, code)?, decode_term(&r, code)?))
        }
        TERM_MUL => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Term::mul(decode_term(&l, code)?, decode_term(&r, code)?))
        }
        other => Err(invalid(code, format!("unknown term tag {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

const F_EQ: u32 = 0;
const F_NOT: u32 = 1;
const F_AND: u32 = 2;
const F_OR: u32 = 3;
const F_IMPLIES: u32 = 4;
const F_IFF: u32 = 5;
const F_FORALL: u32 = 6;
const F_EXISTS: u32 = 7;
const F_BFORALL: u32 = 8;
const F_BEXISTS: u32 = 9;
const F_ATOM: u32 = 10;

/// Encodes a formula. Deterministic and injective on canonical ASTs; stable
/// across runs. Propositional variables are not encodable.
pub fn encode_formula(f: &Formula) -> Result<Code, CodingError> {
    Ok(Code(encode_formula_raw(f)?))
}

fn encode_formula_raw(f: &Formula) -> Result<BigUint, CodingError> {
    let node = |tag: u32, payload: BigUint| pair(&BigUint::from(tag), &payload);
    match f {
        Formula::Eq(l, r) => Ok(node(F_EQ, pair(&encode_term(l), &encode_term(r)))),
        Formula::Not(g) => Ok(node(F_NOT, encode_formula_raw(g)?)),
        Formula::And(l, r) => Ok(node(
            F_AND,
            pair(&encode_formula_raw(l)?, &encode_formula_raw(r)?),
        )),
        Formula::Or(l, r) => Ok(node(
            F_OR,
            pair(&encode_formula_raw(l)?, &encode_formula_raw(r)?),
        )),
        Formula::Implies(l, r) => Ok(node(
            F_IMPLIES,
            pair(&encode_formula_raw(l)?, &encode_formula_raw(r)?),
        )),
        Formula::Iff(l, r) => Ok(node(
            F_IFF,
            pair(&encode_formula_raw(l)?, &encode_formula_raw(r)?),
        )),
        Formula::Forall(v, g) => Ok(node(
            F_FORALL,
            pair(&encode_name(v), &encode_formula_raw(g)?),
        )),
        Formula::Exists(v, g) => Ok(node(
            F_EXISTS,
            pair(&encode_name(v), &encode_formula_raw(g)?),
        )),
        Formula::BForall(v, bound, g) => Ok(node(
            F_BFORALL,
            pair(
                &encode_name(v),
                &pair(&encode_term(bound), &encode_formula_raw(g)?),
            ),
        )),
        Formula::BExists(v, bound, g) => Ok(node(
            F_BEXISTS,
            pair(
                &encode_name(v),
                &pair(&encode_term(bound), &encode_formula_raw(g)?),
            ),
        )),
        Formula::DefinedAtom {
            symbol,
            args,
            class,
        } => {
            let arg_codes: Vec<BigUint> = args.iter().map(encode_term).collect();
            Ok(node(
                F_ATOM,
                pair(
                    &encode_name(symbol),
                    &pair(&encode_class(class), &encode_list(&arg_codes)),
                ),
            ))
        }
        Formula::PropVar(_) => Err(CodingError::PropVar),
    }
}

/// Decodes a code back to the unique formula that produced it, rejecting
/// naturals outside the image of [`encode_formula`] (0, for one, is not a
/// valid code: the empty bit string does not parse as a pair).
pub fn decode_formula(c: &Code) -> Result<Formula, CodingError> {
    decode_formula_raw(&c.0, &c.0)
}

fn decode_formula_raw(z: &BigUint, code: &BigUint) -> Result<Formula, CodingError> {
    let (tag, payload) = unpair_or(z, code)?;
    let tag = u32::try_from(&tag).map_err(|_| invalid(code, "formula tag too large"))?;
    match tag {
        F_EQ => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Formula::eq(decode_term(&l, code)?, decode_term(&r, code)?))
        }
        F_NOT => Ok(Formula::not(decode_formula_raw(&payload, code)?)),
        F_AND => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Formula::and(
                decode_formula_raw(&l, code)?,
                decode_formula_raw(&r, code)?,
            ))
        }
        F_OR => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Formula::or(
                decode_formula_raw(&l, code)?,
                decode_formula_raw(&r, code)?,
            ))
        }
        F_IMPLIES => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Formula::implies(
                decode_formula_raw(&l, code)?,
                decode_formula_raw(&r, code)?,
            ))
        }
        F_IFF => {
            let (l, r) = unpair_or(&payload, code)?;
            Ok(Formula::iff(
                decode_formula_raw(&l, code)?,
                decode_formula_raw(&r, code)?,
            ))
        }
        F_FORALL => {
            let (v, g) = unpair_or(&payload, code)?;
            Ok(Formula::Forall(
                decode_name(&v, code)?,
                Box::new(decode_formula_raw(&g, code)?),
            ))
        }
        F_EXISTS => {
            let (v, g) = unpair_or(&payload, code)?;
            Ok(Formula::Exists(
                decode_name(&v, code)?,
                Box::new(decode_formula_raw(&g, code)?),
            ))
        }
        F_BFORALL | F_BEXISTS => {
            let (v, rest) = unpair_or(&payload, code)?;
            let (bound, g) = unpair_or(&rest, code)?;
            let var = decode_name(&v, code)?;
            let bound = decode_term(&bound, code)?;
            if bound.contains_var(&var) {
                return Err(invalid(code, "bound term mentions the bound variable"));
            }
            let body = Box::new(decode_formula_raw(&g, code)?);
            Ok(if tag == F_BFORALL {
                Formula::BForall(var, bound, body)
            } else {
                Formula::BExists(var, bound, body)
            })
        }
        F_ATOM => {
            let (sym, rest) = unpair_or(&payload, code)?;
            let (class, args) = unpair_or(&rest, code)?;
            let symbol = decode_name(&sym, code)?;
            let class = decode_class(&class, code)?;
            let arg_codes =
                decode_list(&args).ok_or_else(|| invalid(code, "malformed argument list"))?;
            if arg_codes.is_empty() {
                return Err(invalid(code, "defined atom with no arguments"));
            }
            let args = arg_codes
                .iter()
                .map(|a| decode_term(a, code))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Formula::DefinedAtom {
                symbol,
                args,
                class,
            })
        }
        other => Err(invalid(code, format!("unknown formula tag {other}"))),
    }
}

/// Whether `z` is the code of some formula.
pub fn is_valid_code(z: &BigUint) -> bool {
    decode_formula_raw(z, z).is_ok()
}

/// Whether `z` is the code of a sentence.
pub fn is_sentence_code(z: &BigUint) -> bool {
    decode_formula_raw(z, z)
        .map(|f| f.is_sentence())
        .unwrap_or(false)
}

/// The numeral of the Gödel code of `f`.
pub fn goedel_numeral(f: &Formula) -> Result<Term, CodingError> {
    Ok(Term::Num(encode_formula(f)?.into_value()))
}

/// The diagonal function: maps the code of a formula to the code of the
/// formula with the numeral of that code substituted for all its free
/// variables. On the code of a sentence it is the identity.
pub fn diag(c: &Code) -> Result<Code, CodingError> {
    let f = decode_formula(c)?;
    let diagonalized = f.substitute_all_free(&Term::Num(c.0.clone()));
    encode_formula(&diagonalized)
}

/// Code of the negation of the formula coded by `c` (the coded formula need
/// not be decoded: negation is a single pairing step).
pub fn negation_code(c: &Code) -> Code {
    Code(pair(&BigUint::from(F_NOT), &c.0))
}

/// If `z` is shaped like a negation node, returns the code of the negated
/// formula.
pub fn negation_payload(z: &BigUint) -> Option<BigUint> {
    let (tag, payload) = unpair(z)?;
    (tag == BigUint::from(F_NOT)).then_some(payload)
}

/// The involutive complement: strips a top-level negation when present,
/// otherwise negates. Rosser-style witness comparisons treat a sentence and
/// its negation symmetrically, so the "negation" of `~phi` is `phi`, not
/// `~~phi`.
pub fn complement_code(c: &Code) -> Code {
    match negation_payload(&c.0) {
        Some(inner) => Code(inner),
        None => negation_code(c),
    }
}

/// The set of codes whose [`complement_code`] is `c`: the negation of `c`,
/// plus the formula `c` negates when `c` is a negation of a non-negation.
pub fn complement_preimages(c: &Code) -> Vec<Code> {
    let mut out = vec![negation_code(c)];
    if let Some(inner) = negation_payload(&c.0) {
        if negation_payload(&inner).is_none() {
            out.push(Code(inner));
        }
    }
    out
}

/// If `z` is shaped like an implication node, returns the codes of its
/// antecedent and consequent. Used by the modus-ponens check on derivations.
pub fn implication_parts(z: &BigUint) -> Option<(BigUint, BigUint)> {
    let (tag, payload) = unpair(z)?;
    if tag == BigUint::from(F_IMPLIES) {
        unpair(&payload)
    } else {
        None
    }
}

/// Applies a one-variable propositional context to a coded formula at the
/// code level: decodes, substitutes into the context, re-encodes.
pub fn context_transform(context: &PropTemplate, c: &Code) -> Result<Code, CodingError> {
    let vars = context.vars();
    if vars.len() != 1 {
        return Err(CodingError::ContextArity(vars.len()));
    }
    let inner = decode_formula(c)?;
    let transformed = context
        .instantiate_one(&inner)
        .expect("arity checked above");
    encode_formula(&transformed)
}

/// The documented, versioned description of the numbering. Stable output;
/// golden-tested.
pub fn codec_spec() -> String {
    let mut s = String::new();
    s.push_str(&format!("codec version: {CODEC_VERSION}\n"));
    s.push_str("naturals as bit strings: n is the binary expansion of n + 1 without its leading 1\n");
    s.push_str("pairing: pair(a, b) is the natural of the string  1^|s(L)| 0 s(L) s(a) s(b)\n");
    s.push_str("         where s(n) is the bit string of n and L = |s(a)|;\n");
    s.push_str("         injective, strictly monotone in both arguments, partial inverse\n");
    s.push_str("node: pair(tag, payload)\n");
    s.push_str("lists: nil = 0, cons(h, t) = pair(h, t) + 1\n");
    s.push_str("identifiers: big-endian base-256 value of the ASCII bytes\n");
    s.push_str("classes: delta0 = 0, sigmaN = 2N - 1, piN = 2N\n");
    s.push_str("term tags:\n");
    s.push_str("  0 numeral        payload = value (successor chains fold into one node)\n");
    s.push_str("  1 variable       payload = identifier\n");
    s.push_str("  2 successor      payload = term (never a numeral)\n");
    s.push_str("  3 addition       payload = pair(term, term)\n");
    s.push_str("  4 multiplication payload = pair(term, term)\n");
    s.push_str("formula tags:\n");
    s.push_str("  0 equality       payload = pair(term, term)\n");
    s.push_str("  1 negation       payload = formula\n");
    s.push_str("  2 conjunction    payload = pair(formula, formula)\n");
    s.push_str("  3 disjunction    payload = pair(formula, formula)\n");
    s.push_str("  4 implication    payload = pair(formula, formula)\n");
    s.push_str("  5 biconditional  payload = pair(formula, formula)\n");
    s.push_str("  6 universal      payload = pair(identifier, formula)\n");
    s.push_str("  7 existential    payload = pair(identifier, formula)\n");
    s.push_str("  8 bounded universal   payload = pair(identifier, pair(term, formula))\n");
    s.push_str("  9 bounded existential payload = pair(identifier, pair(term, formula))\n");
    s.push_str("  10 defined atom  payload = pair(symbol, pair(class, args list))\n");
    s.push_str("propositional variables are not encodable\n");
    s.push_str("0 is not a valid code (the empty string does not parse as a pair)\n");
    s
}
