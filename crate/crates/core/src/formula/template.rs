//! Propositional templates: formulas built from propositional variables and
//! connectives only, used to shape provability self-reference.

use super::parse::{parse_template_text, ParseError};
use super::Formula;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("templates may contain only propositional variables and connectives")]
    NotPropositional,
    #[error("assignment is missing variable '{0}'")]
    MissingVariable(String),
    #[error("expected a template over exactly one variable, found {0}")]
    ArityMismatch(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A propositional formula over variables `p1, ..., pn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropTemplate {
    body: Formula,
}

impl PropTemplate {
    /// Wraps a formula, checking that it is purely propositional.
    pub fn new(body: Formula) -> Result<PropTemplate, TemplateError> {
        if is_propositional(&body) {
            Ok(PropTemplate { body })
        } else {
            Err(TemplateError::NotPropositional)
        }
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// The variables occurring in the template, sorted by name.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_props(&self.body, &mut out);
        out
    }

    /// Classical truth-table evaluation under `assignment`, which must cover
    /// every variable of the template.
    pub fn eval(&self, assignment: &BTreeMap<String, bool>) -> Result<bool, TemplateError> {
        eval_prop(&self.body, assignment)
    }

    /// Evaluates the template with every variable set to true.
    pub fn eval_all_true(&self) -> bool {
        let assignment = self.vars().into_iter().map(|v| (v, true)).collect();
        self.eval(&assignment).expect("assignment covers all vars")
    }

    /// Replaces each propositional variable by the formula in `map`.
    /// Variables missing from the map are an error.
    pub fn instantiate(
        &self,
        map: &BTreeMap<String, Formula>,
    ) -> Result<Formula, TemplateError> {
        instantiate_rec(&self.body, map)
    }

    /// For single-variable templates: substitutes `arg` for the variable.
    pub fn instantiate_one(&self, arg: &Formula) -> Result<Formula, TemplateError> {
        let vars = self.vars();
        if vars.len() != 1 {
            return Err(TemplateError::ArityMismatch(vars.len()));
        }
        let v = vars.into_iter().next().expect("one variable");
        let map = BTreeMap::from([(v, arg.clone())]);
        self.instantiate(&map)
    }
}

/// Parses a template from text: connectives over bare identifiers, e.g.
/// `~p1 & ~p2`.
pub fn parse_template(text: &str) -> Result<PropTemplate, TemplateError> {
    let body = parse_template_text(text)?;
    PropTemplate::new(body)
}

fn is_propositional(f: &Formula) -> bool {
    match f {
        Formula::PropVar(_) => true,
        Formula::Not(g) => is_propositional(g),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            is_propositional(l) && is_propositional(r)
        }
        _ => false,
    }
}

fn collect_props(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::PropVar(p) => {
            out.insert(p.clone());
        }
        Formula::Not(g) => collect_props(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            collect_props(l, out);
            collect_props(r, out);
        }
        _ => {}
    }
}

fn eval_prop(f: &Formula, assignment: &BTreeMap<String, bool>) -> Result<bool, TemplateError> {
    match f {
        Formula::PropVar(p) => assignment
            .get(p)
            .copied()
            .ok_or_else(|| TemplateError::MissingVariable(p.clone())),
        Formula::Not(g) => Ok(!eval_prop(g, assignment)?),
        Formula::And(l, r) => Ok(eval_prop(l, assignment)? && eval_prop(r, assignment)?),
        Formula::Or(l, r) => Ok(eval_prop(l, assignment)? || eval_prop(r, assignment)?),
        Formula::Implies(l, r) => Ok(!eval_prop(l, assignment)? || eval_prop(r, assignment)?),
        Formula::Iff(l, r) => Ok(eval_prop(l, assignment)? == eval_prop(r, assignment)?),
        _ => Err(TemplateError::NotPropositional),
    }
}

fn instantiate_rec(
    f: &Formula,
    map: &BTreeMap<String, Formula>,
) -> Result<Formula, TemplateError> {
    match f {
        Formula::PropVar(p) => map
            .get(p)
            .cloned()
            .ok_or_else(|| TemplateError::MissingVariable(p.clone())),
        Formula::Not(g) => Ok(Formula::not(instantiate_rec(g, map)?)),
        Formula::And(l, r) => Ok(Formula::and(
            instantiate_rec(l, map)?,
            instantiate_rec(r, map)?,
        )),
        Formula::Or(l, r) => Ok(Formula::or(
            instantiate_rec(l, map)?,
            instantiate_rec(r, map)?,
        )),
        Formula::Implies(l, r) => Ok(Formula::implies(
            instantiate_rec(l, map)?,
            instantiate_rec(r, map)?,
        )),
        Formula::Iff(l, r) => Ok(Formula::iff(
            instantiate_rec(l, map)?,
            instantiate_rec(r, map)?,
        )),
        _ => Err(TemplateError::NotPropositional),
    }
}
