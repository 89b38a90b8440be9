//! Query AST for the SELECT/WHERE/FILTER subset.

use std::collections::BTreeMap;

use crate::rdf::Term;

/// A pattern position: a concrete term or a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> PatternTerm {
        PatternTerm::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|p| p.as_var())
    }
}

/// One equality atom of a FILTER conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterAtom {
    VarTerm(String, Term),
    VarVar(String, String),
}

impl FilterAtom {
    pub fn variables(&self) -> Vec<&str> {
        match self {
            FilterAtom::VarTerm(v, _) => vec![v],
            FilterAtom::VarVar(a, b) => vec![a, b],
        }
    }
}

/// A FILTER expression: a conjunction of equality atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterExpr {
    pub atoms: Vec<FilterAtom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: BTreeMap<String, String>,
    pub projection: Vec<String>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<FilterExpr>,
}

impl Query {
    /// All filter atoms across all FILTER clauses.
    pub fn filter_atoms(&self) -> impl Iterator<Item = &FilterAtom> {
        self.filters.iter().flat_map(|f| f.atoms.iter())
    }
}

/// One solution: a total mapping of the projected variables to terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Solution {
    bindings: BTreeMap<String, Term>,
}

impl Solution {
    pub fn new(bindings: BTreeMap<String, Term>) -> Solution {
        Solution { bindings }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Term> {
        &self.bindings
    }
}

/// Deterministically ordered, deduplicated solutions.
pub type SolutionSequence = Vec<Solution>;
