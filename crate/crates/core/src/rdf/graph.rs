//! In-memory RDF graph with set semantics.
//!
//! Triples live in a `BTreeSet`, so iteration order is the canonical triple
//! order (subject, predicate, object) and repeated inserts are no-ops.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Term, Triple};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Inserts a triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    /// Declares a prefix binding. A label maps to exactly one namespace;
    /// re-declaring a label replaces its binding.
    pub fn add_prefix(&mut self, label: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(label.into(), namespace.into());
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Matches against an optional (subject, predicate, object) pattern.
    /// Absent positions are wildcards. Results come back in canonical order.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<&Triple> {
        self.triples
            .iter()
            .filter(|t| {
                subject.is_none_or(|s| t.subject() == s)
                    && predicate.is_none_or(|p| t.predicate() == p)
                    && object.is_none_or(|o| t.object() == o)
            })
            .collect()
    }

    /// The single object of (subject, predicate), if exactly one exists.
    pub fn object_of(&self, subject: &Term, predicate: &Term) -> Option<&Term> {
        let matches = self.match_pattern(Some(subject), Some(predicate), None);
        match matches.as_slice() {
            [t] => Some(t.object()),
            _ => None,
        }
    }

    pub fn blank_ids(&self) -> BTreeSet<&str> {
        let mut ids = BTreeSet::new();
        for t in &self.triples {
            if let Term::BlankNode(id) = t.subject() {
                ids.insert(id.as_str());
            }
            if let Term::BlankNode(id) = t.object() {
                ids.insert(id.as_str());
            }
        }
        ids
    }

    /// Merges `other` into `self`, renaming incoming blank nodes so they can
    /// never capture blank nodes already present.
    pub fn merge(&mut self, other: &Graph) {
        let used: BTreeSet<String> = self.blank_ids().iter().map(|s| s.to_string()).collect();
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        let mut counter = 0usize;
        for id in other.blank_ids() {
            let fresh = loop {
                let candidate = format!("m{counter}");
                counter += 1;
                if !used.contains(&candidate) && !other.blank_ids().contains(candidate.as_str()) {
                    break candidate;
                }
            };
            rename.insert(id.to_string(), fresh);
        }
        let map = |term: &Term| -> Term {
            match term {
                Term::BlankNode(id) => Term::BlankNode(rename[id].clone()),
                other => other.clone(),
            }
        };
        for t in other.iter() {
            let renamed = Triple::new(map(t.subject()), t.predicate().clone(), map(t.object()))
                .expect("renaming preserves well-formedness");
            self.triples.insert(renamed);
        }
        for (label, ns) in other.prefixes() {
            self.prefixes
                .entry(label.clone())
                .or_insert_with(|| ns.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Term;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(
            Term::iri(format!("http://e/{s}")).unwrap(),
            Term::iri(format!("http://e/{p}")).unwrap(),
            Term::iri(format!("http://e/{o}")).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn insert_into_empty_graph() {
        let mut g = Graph::new();
        assert!(g.insert(t("a", "p", "b")));
        assert_eq!(g.len(), 1);
        assert!(g.contains(&t("a", "p", "b")));
    }

    #[test]
    fn insert_is_idempotent() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        assert!(!g.insert(t("a", "p", "b")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn insert_distinct_grows_cardinality() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        g.insert(t("a", "p", "c"));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn match_all_wildcards_returns_everything() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        g.insert(t("c", "q", "d"));
        assert_eq!(g.match_pattern(None, None, None).len(), 2);
    }

    #[test]
    fn match_bound_subject() {
        let mut g = Graph::new();
        g.insert(t("a", "p", "b"));
        g.insert(t("c", "q", "d"));
        let s = Term::iri("http://e/a").unwrap();
        let hits = g.match_pattern(Some(&s), None, None);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0], &t("a", "p", "b"));
    }

    #[test]
    fn merge_renames_blank_nodes() {
        let mut a = Graph::new();
        a.insert(
            Triple::new(
                Term::blank("b0"),
                Term::iri("http://e/p").unwrap(),
                Term::string_literal("x"),
            )
            .unwrap(),
        );
        let mut b = Graph::new();
        b.insert(
            Triple::new(
                Term::blank("b0"),
                Term::iri("http://e/p").unwrap(),
                Term::string_literal("y"),
            )
            .unwrap(),
        );
        a.merge(&b);
        assert_eq!(a.len(), 2);
        assert_eq!(a.blank_ids().len(), 2);
    }
}
