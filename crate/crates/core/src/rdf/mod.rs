//! RDF term model, in-memory graph with set semantics, and Turtle I/O.

mod graph;
mod iso;
mod term;
mod turtle;

pub use graph::Graph;
pub use iso::isomorphic;
pub use term::{Literal, Term, Triple};
pub use turtle::{parse_turtle, serialize_turtle};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RdfError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: u32,
        column: u32,
        message: String,
    },
    #[error("undeclared prefix '{0}'")]
    UnknownPrefix(String),
    #[error("malformed triple: {0}")]
    MalformedTriple(String),
}
