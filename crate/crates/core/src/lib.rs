//! Core engine for constructing, classifying, and evaluating self-referential
//! sentences of first-order arithmetic.
//!
//! The crate is organized around five subsystems:
//!
//! * [`formula`] — the term/formula AST for the language of arithmetic
//!   (`0`, `S`, `+`, `*`, `=`) with bounded quantifiers and defined atoms,
//!   plus parsing, printing, substitution, and arithmetical-hierarchy
//!   classification.
//! * [`coding`] — Gödel numbering of terms and formulas as arbitrary-precision
//!   naturals via a pinned tag-and-pair scheme, and the diagonal function.
//! * [`theory`] — theory backends (finite lists, code-indexed enumerations,
//!   Hilbert-style calculi) exposing a decidable proof relation, and the
//!   provability / Rosser-provability / consistency formula builders.
//! * [`diagonal`] — the diagonal-lemma fixed-point constructors and the named
//!   self-referential sentences built from them (Gödel, Rosser, Henkin,
//!   pseudo-Gödelian).
//! * [`semantics`] — fuel-bounded evaluation in the standard model with
//!   certificates, plus soundness audits and independence probes.

pub mod coding;
pub mod diagonal;
pub mod formula;
pub mod report;
pub mod semantics;
pub mod theory;

pub use coding::{diag, decode_formula, encode_formula, goedel_numeral, Code, CodingError};
pub use diagonal::{
    builtin_pseudo_p, builtin_pseudo_r, fixed_point_pi, fixed_point_sigma, goedel_sentence,
    henkin_sentence, pseudo_goedelian, pseudo_goedelian_decide, rosser_henkin_sentence,
    rosser_sentence, Decided, DiagonalError, FixedPointReport,
};
pub use formula::{
    classify::{classify, ClassifyError},
    numeral,
    parse::{parse, parse_with, AtomSignatures, ParseError},
    template::{parse_template, PropTemplate, TemplateError},
    Formula, HierarchyClass, Term,
};
pub use semantics::{
    check_fixed_point, eval, eval_sigma1, independence_probe, replay_certificate,
    rosser_case_analysis, soundness_audit, Certificate, EvalError, FixedPointCheck, Fuel,
    ProbeOutcome, RosserCase, RosserCaseReport, SoundnessReport, TruthValue,
};
pub use theory::{
    con_sentence, parse_theory_file, pr_formula, rosser_pr_formula, DefinedAtomRegistry,
    Generator, Theory, TheoryError,
};
