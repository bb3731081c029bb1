//! Concrete syntax for terms and formulas.
//!
//! Grammar (precedence `~` > `&` > `|` > `->` > `<->`, arrows and the binary
//! connectives right-associative, `*` binding tighter than `+`, both
//! left-associative):
//!
//! ```text
//! formula    := iff
//! iff        := imp ('<->' iff)?
//! imp        := or ('->' imp)?
//! or         := and ('|' or)?
//! and        := unary ('&' and)?
//! unary      := '~' unary | quantified | primary
//! quantified := ('forall' | 'exists') IDENT ('<' term)? '.' formula
//! primary    := '(' formula ')' | IDENT '(' term (',' term)* ')' | term '=' term
//! term       := factor ('+' factor)*
//! factor     := atom ('*' atom)*
//! atom       := NUMBER | 'S' '(' term ')' | IDENT | '(' term ')'
//! ```
//!
//! `forall`, `exists`, and `S` are reserved. Quantifiers extend as far to the
//! right as possible. `NUMBER` is a decimal numeral literal; `0` is the zero
//! term and larger literals abbreviate iterated successors.
//!
//! Defined atoms (`name(t1, ..., tk)`) are parsed with the hierarchy class
//! found in the supplied signature table, defaulting to `delta0` for symbols
//! not listed there.

use super::{Formula, HierarchyClass, Term};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use thiserror::Error;

/// Symbol table mapping defined-atom names to `(arity, declared class)`.
pub type AtomSignatures = BTreeMap<String, (usize, HierarchyClass)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

const RESERVED: &[&str] = &["forall", "exists", "S"];

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let ok_first = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    ok_first
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

/// Parses a formula with no defined-atom declarations in scope.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, &AtomSignatures::new())
}

/// Parses a formula, resolving defined atoms against `signatures`.
pub fn parse_with(text: &str, signatures: &AtomSignatures) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        signatures,
        template_mode: false,
    };
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a propositional template body: connectives over bare identifiers.
pub(crate) fn parse_template_text(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let empty = AtomSignatures::new();
    let mut p = Parser {
        tokens,
        pos: 0,
        signatures: &empty,
        template_mode: true,
    };
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall,
    Exists,
    SuccKw,
    Ident(String),
    Number(BigUint),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    IffOp,
    EqSign,
    Plus,
    Star,
    LParen,
    RParen,
    Dot,
    Comma,
    Lt,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Forall => "'forall'".into(),
            Tok::Exists => "'exists'".into(),
            Tok::SuccKw => "'S'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Number(n) => format!("numeral '{n}'"),
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::IffOp => "'<->'".into(),
            Tok::EqSign => "'='".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Comma => "','".into(),
            Tok::Lt => "'<'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '~' => {
                i += 1;
                Tok::Tilde
            }
            '&' => {
                i += 1;
                Tok::Amp
            }
            '|' => {
                i += 1;
                Tok::Pipe
            }
            '=' => {
                i += 1;
                Tok::EqSign
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '.' => {
                i += 1;
                Tok::Dot
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::Arrow
                } else {
                    return Err(ParseError {
                        position: start,
                        message: "expected '->' after '-'".into(),
                    });
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    i += 3;
                    Tok::IffOp
                } else {
                    i += 1;
                    Tok::Lt
                }
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let n: BigUint = text[i..j].parse().expect("digit run parses");
                i = j;
                Tok::Number(n)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                i = j;
                match word {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "S" => Tok::SuccKw,
                    _ => Tok::Ident(word.to_string()),
                }
            }
            other => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character '{other}'"),
                });
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, bytes.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    signatures: &'a AtomSignatures,
    template_mode: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    fn here(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.peek().describe())))
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            position: self.here(),
            message,
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::IffOp {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and()?;
        if *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.or()?;
            Ok(Formula::or(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.and()?;
            Ok(Formula::and(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.primary(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        if self.template_mode {
            return Err(self.error("quantifiers are not allowed in templates".into()));
        }
        let universal = matches!(self.peek(), Tok::Forall);
        self.bump();
        let var_pos = self.here();
        let var = match self.bump() {
            Tok::Ident(name) => name,
            other => {
                return Err(ParseError {
                    position: var_pos,
                    message: format!("expected variable name, found {}", other.describe()),
                });
            }
        };
        let bound = if *self.peek() == Tok::Lt {
            self.bump();
            let bound_pos = self.here();
            let t = self.term()?;
            if t.contains_var(&var) {
                return Err(ParseError {
                    position: bound_pos,
                    message: format!("bound term mentions the bound variable '{var}'"),
                });
            }
            Some(t)
        } else {
            None
        };
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match (universal, bound) {
            (true, None) => Formula::forall(var, body),
            (false, None) => Formula::exists(var, body),
            (true, Some(b)) => Formula::bforall(var, b, body),
            (false, Some(b)) => Formula::bexists(var, b, body),
        })
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        if self.template_mode {
            return self.template_primary();
        }
        // Defined atom: identifier immediately applied to arguments.
        if let (Tok::Ident(_), Tok::LParen) = (self.peek(), self.peek_at(1)) {
            return self.defined_atom();
        }
        // A parenthesis may open a formula or a term; try the formula
        // reading first and fall back, since no string parses as both.
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            self.bump();
            if let Ok(f) = self.formula() {
                if *self.peek() == Tok::RParen {
                    self.bump();
                    return Ok(f);
                }
            }
            self.pos = save;
        }
        let lhs = self.term()?;
        self.expect(Tok::EqSign)?;
        let rhs = self.term()?;
        Ok(Formula::eq(lhs, rhs))
    }

    fn template_primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::prop(name))
            }
            other => Err(self.error(format!(
                "expected propositional variable, found {}",
                other.describe()
            ))),
        }
    }

    fn defined_atom(&mut self) -> Result<Formula, ParseError> {
        let symbol = match self.bump() {
            Tok::Ident(name) => name,
            _ => unreachable!("caller checked"),
        };
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        let class = self
            .signatures
            .get(&symbol)
            .map(|(_, c)| *c)
            .unwrap_or(HierarchyClass::Delta0);
        Ok(Formula::atom(symbol, args, class))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::add(t, self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut t = self.term_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::mul(t, self.term_atom()?);
        }
        Ok(t)
    }

    fn term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::SuccKw => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(inner))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::var(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {}", other.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_terms() {
        assert_eq!(
            parse("0 = 0").unwrap(),
            Formula::eq(Term::zero(), Term::zero())
        );
        assert_eq!(
            parse("S(0) + S(0) = S(S(0))").unwrap(),
            Formula::eq(
                Term::add(Term::succ(Term::zero()), Term::succ(Term::zero())),
                Term::succ(Term::succ(Term::zero()))
            )
        );
    }

    #[test]
    fn quantifier_nesting() {
        assert_eq!(
            parse("forall x. exists y. ~(y = x)").unwrap(),
            Formula::forall(
                "x",
                Formula::exists(
                    "y",
                    Formula::not(Formula::eq(Term::var("y"), Term::var("x")))
                )
            )
        );
    }

    #[test]
    fn quantifier_extends_right() {
        let f = parse("forall x. x = 0 & x = 0").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::and(
                    Formula::eq(Term::var("x"), Term::zero()),
                    Formula::eq(Term::var("x"), Term::zero())
                )
            )
        );
    }

    #[test]
    fn precedence_chain() {
        let f = parse("~0 = 0 & 0 = 0 | 0 = 0 -> 0 = 0 <-> 0 = 0").unwrap();
        // ((((~(0=0)) & 0=0) | 0=0) -> 0=0) <-> 0=0
        let e = || Formula::eq(Term::zero(), Term::zero());
        assert_eq!(
            f,
            Formula::iff(
                Formula::implies(
                    Formula::or(Formula::and(Formula::not(e()), e()), e()),
                    e()
                ),
                e()
            )
        );
    }

    #[test]
    fn defined_atom_with_signature() {
        let mut sigs = AtomSignatures::new();
        sigs.insert("prf_T".to_string(), (2, HierarchyClass::Delta0));
        let f = parse_with("exists y. prf_T(y, x)", &sigs).unwrap();
        match f {
            Formula::Exists(_, inner) => match *inner {
                Formula::DefinedAtom { symbol, args, class } => {
                    assert_eq!(symbol, "prf_T");
                    assert_eq!(args.len(), 2);
                    assert_eq!(class, HierarchyClass::Delta0);
                }
                other => panic!("unexpected body: {other:?}"),
            },
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn bounded_quantifier() {
        let f = parse("forall z < y. ~prf(z, x)").unwrap();
        match f {
            Formula::BForall(v, bound, _) => {
                assert_eq!(v, "z");
                assert_eq!(bound, Term::var("y"));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn bound_mentioning_variable_rejected() {
        let err = parse("forall z < z. z = 0").unwrap_err();
        assert!(err.message.contains("bound term"));
    }

    #[test]
    fn numeral_literals() {
        assert_eq!(
            parse("3 = S(S(S(0)))").unwrap(),
            Formula::eq(Term::num(3u32), Term::num(3u32))
        );
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("forall . x = 0").unwrap_err();
        assert_eq!(err.position, 7);
    }

    #[test]
    fn open_formulas_parse() {
        let f = parse("x = 0").unwrap();
        assert_eq!(f.free_vars().len(), 1);
    }
}
