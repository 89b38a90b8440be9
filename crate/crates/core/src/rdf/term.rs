//! RDF terms and triples.
//!
//! Terms are immutable values. Literals always carry a datatype IRI; plain
//! literals default to `xsd:string` and language-tagged literals to
//! `rdf:langString`. Derived ordering (IRI < blank node < literal, then
//! lexicographic) is the canonical term order used everywhere results must
//! be deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::RdfError;
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub lexical: String,
    pub datatype: String,
    pub language: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal(Literal),
}

impl Term {
    /// Builds an IRI term, rejecting empty strings and embedded whitespace.
    pub fn iri(value: impl Into<String>) -> Result<Term, RdfError> {
        let value = value.into();
        if value.is_empty() {
            return Err(RdfError::MalformedTriple("empty IRI".into()));
        }
        if value.chars().any(char::is_whitespace) {
            return Err(RdfError::MalformedTriple(format!(
                "IRI <{value}> contains whitespace"
            )));
        }
        Ok(Term::Iri(value))
    }

    /// IRI constructor for vocabulary constants known to be well-formed.
    pub fn iri_unchecked(value: impl Into<String>) -> Term {
        Term::Iri(value.into())
    }

    pub fn blank(id: impl Into<String>) -> Term {
        Term::BlankNode(id.into())
    }

    /// Typed literal. The datatype must be a well-formed IRI string.
    pub fn literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
            language: None,
        })
    }

    /// Plain literal; takes the `xsd:string` datatype.
    pub fn string_literal(lexical: impl Into<String>) -> Term {
        Term::literal(lexical, vocab::xsd_string())
    }

    pub fn lang_literal(lexical: impl Into<String>, language: impl Into<String>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: vocab::rdf_lang_string(),
            language: Some(language.into()),
        })
    }

    pub fn integer_literal(value: i64) -> Term {
        Term::literal(value.to_string(), vocab::xsd_integer())
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// Local name of an IRI under `ns`, when the IRI starts with it.
    pub fn local_name(&self, ns: &str) -> Option<&str> {
        self.as_iri().and_then(|iri| iri.strip_prefix(ns))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(v) => write!(f, "<{v}>"),
            Term::BlankNode(id) => write!(f, "_:{id}"),
            Term::Literal(l) => {
                write!(f, "\"{}\"", l.lexical)?;
                if let Some(lang) = &l.language {
                    write!(f, "@{lang}")
                } else if l.datatype != vocab::xsd_string() {
                    write!(f, "^^<{}>", l.datatype)
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// An RDF triple. The constructor enforces the positional rules: the subject
/// is an IRI or blank node and the predicate is always an IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Triple, RdfError> {
        if subject.is_literal() {
            return Err(RdfError::MalformedTriple(format!(
                "literal subject {subject}"
            )));
        }
        if !predicate.is_iri() {
            return Err(RdfError::MalformedTriple(format!(
                "non-IRI predicate {predicate}"
            )));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn parts(&self) -> (&Term, &Term, &Term) {
        (&self.subject, &self.predicate, &self.object)
    }

    pub fn into_parts(self) -> (Term, Term, Term) {
        (self.subject, self.predicate, self.object)
    }

    pub fn has_blank(&self) -> bool {
        self.subject.is_blank() || self.object.is_blank()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_rejects_whitespace_and_empty() {
        assert!(Term::iri("http://e/a b").is_err());
        assert!(Term::iri("").is_err());
        assert!(Term::iri("http://e/a").is_ok());
    }

    #[test]
    fn plain_literal_defaults_to_xsd_string() {
        let t = Term::string_literal("hi");
        assert_eq!(t.as_literal().unwrap().datatype, vocab::xsd_string());
    }

    #[test]
    fn triple_rejects_literal_subject_and_non_iri_predicate() {
        let lit = Term::string_literal("x");
        let iri = Term::iri("http://e/p").unwrap();
        assert!(Triple::new(lit.clone(), iri.clone(), iri.clone()).is_err());
        assert!(Triple::new(iri.clone(), lit, iri).is_err());
    }

    #[test]
    fn term_order_puts_iris_first() {
        let i = Term::iri("http://e/a").unwrap();
        let b = Term::blank("b0");
        let l = Term::string_literal("a");
        assert!(i < b && b < l);
    }
}
