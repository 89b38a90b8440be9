//! Query evaluation: left-to-right nested-loop join over the pattern list,
//! with filter atoms applied as soon as all their variables are bound.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{FilterAtom, PatternTerm, Query, Solution, SolutionSequence};
use crate::rdf::{Graph, Term, Triple};

type Bindings = BTreeMap<String, Term>;

fn resolve<'a>(term: &'a PatternTerm, bindings: &'a Bindings) -> Option<&'a Term> {
    match term {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => bindings.get(v),
    }
}

/// Extends `bindings` in place with the variables a triple binds; undone by
/// the caller via the returned newly-bound names. Returns None on conflict.
fn extend(pattern: &PatternTerm, value: &Term, bindings: &mut Bindings) -> Option<Option<String>> {
    match pattern {
        PatternTerm::Term(t) => (t == value).then_some(None),
        PatternTerm::Var(v) => match bindings.get(v) {
            Some(bound) => (bound == value).then_some(None),
            None => {
                bindings.insert(v.clone(), value.clone());
                Some(Some(v.clone()))
            }
        },
    }
}

fn atom_holds(atom: &FilterAtom, bindings: &Bindings) -> Option<bool> {
    match atom {
        FilterAtom::VarTerm(v, t) => bindings.get(v).map(|bound| bound == t),
        FilterAtom::VarVar(a, b) => match (bindings.get(a), bindings.get(b)) {
            (Some(ta), Some(tb)) => Some(ta == tb),
            _ => None,
        },
    }
}

/// All filter atoms whose variables are bound must hold; atoms still waiting
/// on unbound variables are deferred.
fn filters_hold_so_far(query: &Query, bindings: &Bindings) -> bool {
    query
        .filter_atoms()
        .all(|atom| atom_holds(atom, bindings).unwrap_or(true))
}

/// At the end of a join, every atom must be decided and true; an atom whose
/// variable never binds excludes the solution.
fn filters_hold_fully(query: &Query, bindings: &Bindings) -> bool {
    query
        .filter_atoms()
        .all(|atom| atom_holds(atom, bindings).unwrap_or(false))
}

fn join(
    query: &Query,
    graph: &Graph,
    depth: usize,
    bindings: &mut Bindings,
    out: &mut BTreeSet<Vec<Term>>,
) {
    if depth == query.patterns.len() {
        if filters_hold_fully(query, bindings) {
            let row: Option<Vec<Term>> = query
                .projection
                .iter()
                .map(|v| bindings.get(v).cloned())
                .collect();
            if let Some(row) = row {
                out.insert(row);
            }
        }
        return;
    }
    let pattern = &query.patterns[depth];
    let s = resolve(&pattern.subject, bindings).cloned();
    let p = resolve(&pattern.predicate, bindings).cloned();
    let o = resolve(&pattern.object, bindings).cloned();
    let candidates: Vec<Triple> = graph
        .match_pattern(s.as_ref(), p.as_ref(), o.as_ref())
        .into_iter()
        .cloned()
        .collect();
    for triple in candidates {
        let mut added: Vec<String> = Vec::new();
        let mut ok = true;
        for (pat, val) in [
            (&pattern.subject, triple.subject()),
            (&pattern.predicate, triple.predicate()),
            (&pattern.object, triple.object()),
        ] {
            match extend(pat, val, bindings) {
                Some(Some(var)) => added.push(var),
                Some(None) => {}
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && filters_hold_so_far(query, bindings) {
            join(query, graph, depth + 1, bindings, out);
        }
        for var in added {
            bindings.remove(&var);
        }
    }
}

/// Evaluates a query over a graph. Solutions are deduplicated and ordered
/// lexicographically over the projected terms, so equal inputs always produce
/// identical sequences.
pub fn evaluate(query: &Query, graph: &Graph) -> SolutionSequence {
    let mut rows: BTreeSet<Vec<Term>> = BTreeSet::new();
    let mut bindings = Bindings::new();
    join(query, graph, 0, &mut bindings, &mut rows);
    rows.into_iter()
        .map(|row| {
            Solution::new(
                query
                    .projection
                    .iter()
                    .cloned()
                    .zip(row)
                    .collect::<BTreeMap<_, _>>(),
            )
        })
        .collect()
}
