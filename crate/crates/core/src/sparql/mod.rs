//! SPARQL-subset parser and evaluator: SELECT projections, conjunctive
//! triple patterns with inline blank-node property lists, and FILTER
//! conjunctions of `=` atoms.

mod ast;
mod eval;
mod parser;
mod template;

pub use ast::{FilterAtom, FilterExpr, PatternTerm, Query, Solution, SolutionSequence, TriplePattern};
pub use eval::evaluate;
pub use parser::parse_query;
pub use template::substitute;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SparqlError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unsupported query feature: {0}")]
    Unsupported(String),
    #[error("missing placeholder binding '{0}'")]
    MissingPlaceholder(String),
}
