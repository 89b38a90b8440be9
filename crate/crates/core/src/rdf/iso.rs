//! Graph isomorphism up to blank-node relabeling.
//!
//! Ground triples must match exactly; blank nodes are matched by iterative
//! signature refinement followed by a backtracking search over the remaining
//! candidates. Intended for the small graphs this engine works with
//! (reports, intents, randomized test graphs), not for adversarial inputs.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use super::{Graph, Term, Triple};

fn ground(triple: &Triple) -> bool {
    !triple.has_blank()
}

fn term_key(term: &Term) -> String {
    match term {
        Term::BlankNode(_) => "*".to_string(),
        other => other.to_string(),
    }
}

/// One refinement round: each blank node's signature is the sorted multiset
/// of its incident triples, with blank nodes abstracted to their previous
/// round's signature hash.
fn refine(graph: &Graph, prev: &BTreeMap<String, u64>) -> BTreeMap<String, u64> {
    let mut sigs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for id in graph.blank_ids() {
        sigs.insert(id.to_string(), Vec::new());
    }
    for t in graph.iter() {
        let (s, p, o) = t.parts();
        if let Term::BlankNode(id) = s {
            let o_tag = match o {
                Term::BlankNode(oid) => format!("*{}", prev.get(oid).copied().unwrap_or(0)),
                other => term_key(other),
            };
            sigs.get_mut(id)
                .unwrap()
                .push(format!("s|{}|{}|{o_tag}", prev.get(id).copied().unwrap_or(0), p));
        }
        if let Term::BlankNode(id) = o {
            let s_tag = match s {
                Term::BlankNode(sid) => format!("*{}", prev.get(sid).copied().unwrap_or(0)),
                other => term_key(other),
            };
            sigs.get_mut(id)
                .unwrap()
                .push(format!("o|{}|{}|{s_tag}", prev.get(id).copied().unwrap_or(0), p));
        }
    }
    sigs.into_iter()
        .map(|(id, mut parts)| {
            parts.sort();
            let mut h = DefaultHasher::new();
            parts.hash(&mut h);
            (id, h.finish())
        })
        .collect()
}

fn signatures(graph: &Graph) -> BTreeMap<String, u64> {
    let mut sigs: BTreeMap<String, u64> = graph
        .blank_ids()
        .into_iter()
        .map(|id| (id.to_string(), 0))
        .collect();
    let rounds = sigs.len().max(1).min(8);
    for _ in 0..rounds {
        sigs = refine(graph, &sigs);
    }
    sigs
}

fn rename_triples(triples: &BTreeSet<Triple>, mapping: &BTreeMap<String, String>) -> BTreeSet<Triple> {
    let map = |term: &Term| -> Term {
        match term {
            Term::BlankNode(id) => Term::BlankNode(mapping[id].clone()),
            other => other.clone(),
        }
    };
    triples
        .iter()
        .map(|t| {
            Triple::new(map(t.subject()), t.predicate().clone(), map(t.object()))
                .expect("renaming preserves well-formedness")
        })
        .collect()
}

fn search(
    order: &[String],
    idx: usize,
    candidates: &BTreeMap<String, Vec<String>>,
    used: &mut BTreeSet<String>,
    mapping: &mut BTreeMap<String, String>,
    left: &BTreeSet<Triple>,
    right: &BTreeSet<Triple>,
) -> bool {
    if idx == order.len() {
        return rename_triples(left, mapping) == *right;
    }
    let id = &order[idx];
    for cand in &candidates[id] {
        if used.contains(cand) {
            continue;
        }
        used.insert(cand.clone());
        mapping.insert(id.clone(), cand.clone());
        if search(order, idx + 1, candidates, used, mapping, left, right) {
            return true;
        }
        mapping.remove(id);
        used.remove(cand);
    }
    false
}

/// True when `a` and `b` contain the same triples up to a bijective renaming
/// of blank nodes. Prefix declarations are not part of graph identity.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ground_a: BTreeSet<&Triple> = a.iter().filter(|t| ground(t)).collect();
    let ground_b: BTreeSet<&Triple> = b.iter().filter(|t| ground(t)).collect();
    if ground_a != ground_b {
        return false;
    }
    let blanks_a = a.blank_ids();
    let blanks_b = b.blank_ids();
    if blanks_a.len() != blanks_b.len() {
        return false;
    }
    if blanks_a.is_empty() {
        return true;
    }

    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut by_sig_b: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for (id, sig) in &sig_b {
        by_sig_b.entry(*sig).or_default().push(id.clone());
    }
    let mut candidates: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (id, sig) in &sig_a {
        let Some(cands) = by_sig_b.get(sig) else {
            return false;
        };
        candidates.insert(id.clone(), cands.clone());
    }

    // Most-constrained blank nodes first keeps the search shallow.
    let mut order: Vec<String> = candidates.keys().cloned().collect();
    order.sort_by_key(|id| (candidates[id].len(), id.clone()));

    let non_ground_a: BTreeSet<Triple> = a.iter().filter(|t| !ground(t)).cloned().collect();
    let non_ground_b: BTreeSet<Triple> = b.iter().filter(|t| !ground(t)).cloned().collect();
    let mut used = BTreeSet::new();
    let mut mapping = BTreeMap::new();
    search(
        &order,
        0,
        &candidates,
        &mut used,
        &mut mapping,
        &non_ground_a,
        &non_ground_b,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    #[test]
    fn relabeled_blank_nodes_are_isomorphic() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:x ex:p \"v\" . _:x ex:q ex:c .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:y ex:p \"v\" . _:y ex:q ex:c .").unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn different_structure_is_not_isomorphic() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:x ex:p \"v\" .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:y ex:p \"w\" .").unwrap();
        assert!(!isomorphic(&a, &b));
    }

    #[test]
    fn swapped_chain_roles_detected() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:x ex:p _:y . _:y ex:q \"v\" .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:x ex:q _:y . _:y ex:p \"v\" .").unwrap();
        assert!(!isomorphic(&a, &b));
    }

    #[test]
    fn symmetric_pair_needs_backtracking() {
        // two indistinguishable branches; any bijection works
        let a = parse_turtle(
            "@prefix ex: <http://e/> . ex:r ex:b _:x . ex:r ex:b _:y . _:x ex:v \"1\" . _:y ex:v \"1\" .",
        )
        .unwrap();
        let b = parse_turtle(
            "@prefix ex: <http://e/> . ex:r ex:b _:p . ex:r ex:b _:q . _:p ex:v \"1\" . _:q ex:v \"1\" .",
        )
        .unwrap();
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn ground_mismatch_fails_fast() {
        let a = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:c .").unwrap();
        assert!(!isomorphic(&a, &b));
    }
}
