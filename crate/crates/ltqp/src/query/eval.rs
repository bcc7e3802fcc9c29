//! Basic graph pattern evaluation.
//!
//! A deliberately simple left-deep nested-loop join in pattern order with
//! binding propagation. Deterministic: solutions come back sorted by their
//! canonical serialization, and store iteration order never depends on
//! insertion order.

use std::collections::BTreeSet;

use crate::rdf::{SourcedStore, Term, Triple};

use super::{Projection, SelectQuery, TriplePattern};

/// A solution mapping from variable names to terms.
pub type Solution = std::collections::BTreeMap<String, Term>;

/// Stable one-line rendering of a solution, e.g. `?a=<http://x> ?b="5"`.
pub fn canonical_solution(solution: &Solution) -> String {
    solution
        .iter()
        .map(|(v, t)| format!("?{v}={t}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// All mappings that embed the pattern conjunction into the store's
/// distinct triples, as a multiset in canonical order.
pub fn evaluate_bgp(store: &SourcedStore, bgp: &[TriplePattern]) -> Vec<Solution> {
    let triples = store.distinct_triples();
    let mut rows: Vec<Solution> = vec![Solution::new()];
    for pattern in bgp {
        let mut next = Vec::new();
        for row in &rows {
            for triple in &triples {
                if let Some(extended) = unify(row, pattern, triple) {
                    next.push(extended);
                }
            }
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }
    rows.sort_by_cached_key(canonical_solution);
    rows
}

/// Evaluates the graph pattern and projects to the query's variables,
/// multiset-preserving.
pub fn evaluate_query(store: &SourcedStore, query: &SelectQuery) -> Vec<Solution> {
    let rows = evaluate_bgp(store, &query.bgp);
    match &query.projection {
        Projection::All => rows,
        Projection::Vars(vars) => {
            let keep: BTreeSet<&str> = vars.iter().map(String::as_str).collect();
            let mut projected: Vec<Solution> = rows
                .into_iter()
                .map(|mut row| {
                    row.retain(|k, _| keep.contains(k.as_str()));
                    row
                })
                .collect();
            projected.sort_by_cached_key(canonical_solution);
            projected
        }
    }
}

fn unify(row: &Solution, pattern: &TriplePattern, triple: &Triple) -> Option<Solution> {
    let mut out: Option<Solution> = None;
    for (pattern_term, value) in [
        (&pattern.subject, &triple.subject),
        (&pattern.predicate, &triple.predicate),
        (&pattern.object, &triple.object),
    ] {
        match pattern_term {
            Term::Variable(v) => {
                let bound = out.as_ref().unwrap_or(row).get(v);
                match bound {
                    Some(existing) if existing == value => {}
                    Some(_) => return None,
                    None => {
                        out.get_or_insert_with(|| row.clone())
                            .insert(v.clone(), value.clone());
                    }
                }
            }
            constant => {
                if constant != value {
                    return None;
                }
            }
        }
    }
    Some(out.unwrap_or_else(|| row.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(v: &str) -> Term {
        Term::iri(format!("http://{v}")).unwrap()
    }

    fn var(v: &str) -> Term {
        Term::variable(v).unwrap()
    }

    fn triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o)).unwrap()
    }

    fn tp(s: Term, p: Term, o: Term) -> TriplePattern {
        TriplePattern::new(s, p, o).unwrap()
    }

    #[test]
    fn single_pattern_binds_both_variables() {
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://d");
        let rows = evaluate_bgp(&store, &[tp(var("x"), iri("p"), var("y"))]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["x"], iri("a"));
        assert_eq!(rows[0]["y"], iri("b"));
    }

    #[test]
    fn empty_store_yields_no_solutions() {
        let store = SourcedStore::new();
        assert!(evaluate_bgp(&store, &[tp(var("x"), iri("p"), var("y"))]).is_empty());
    }

    #[test]
    fn chain_join_yields_exactly_one_solution() {
        // Store {(a,p,b),(b,q,c)}, pattern {?x p ?y . ?y q ?z}: the only
        // assignment is x=a, y=b, z=c (checked by enumerating all 2^… term
        // choices by hand over the 5-term universe).
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://d");
        store.insert(triple("b", "q", "c"), "http://d");
        let rows = evaluate_bgp(
            &store,
            &[
                tp(var("x"), iri("p"), var("y")),
                tp(var("y"), iri("q"), var("z")),
            ],
        );
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["x"], iri("a"));
        assert_eq!(rows[0]["y"], iri("b"));
        assert_eq!(rows[0]["z"], iri("c"));
    }

    #[test]
    fn shared_variable_must_agree() {
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://d");
        store.insert(triple("c", "q", "d"), "http://d");
        let rows = evaluate_bgp(
            &store,
            &[
                tp(var("x"), iri("p"), var("y")),
                tp(var("x"), iri("q"), var("z")),
            ],
        );
        assert!(rows.is_empty());
    }

    #[test]
    fn projection_restricts_and_preserves_multiplicity() {
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://d");
        store.insert(triple("a", "p", "c"), "http://d");
        let query = SelectQuery {
            projection: Projection::Vars(vec!["x".into()]),
            bgp: vec![tp(var("x"), iri("p"), var("y"))],
            prefixes: Default::default(),
        };
        let rows = evaluate_query(&store, &query);
        // ?y is projected away; x=a remains twice.
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.len() == 1 && r["x"] == iri("a")));
    }
}
