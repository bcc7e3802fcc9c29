//! Source-tagged triple storage with set semantics.

use std::collections::BTreeSet;
use std::sync::RwLock;

use super::{Term, Triple};

/// In-memory store of `(triple, source document IRI)` pairs.
///
/// Inserting a duplicate pair is a no-op. The store is append-only during a
/// traversal; there is no delete. Inserts and reads may run concurrently
/// from multiple workers: a read observes every insert that completed
/// before it started.
#[derive(Debug, Default)]
pub struct SourcedStore {
    entries: RwLock<BTreeSet<(Triple, String)>>,
}

impl SourcedStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts one pair; returns `false` when it was already present.
    pub fn insert(&self, triple: Triple, source: impl Into<String>) -> bool {
        self.entries
            .write()
            .expect("store lock")
            .insert((triple, source.into()))
    }

    /// Inserts a whole document; returns the number of new pairs.
    pub fn insert_all<I: IntoIterator<Item = Triple>>(&self, triples: I, source: &str) -> usize {
        let mut guard = self.entries.write().expect("store lock");
        triples
            .into_iter()
            .filter(|t| guard.insert((t.clone(), source.to_string())))
            .count()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of every entry, ordered by (subject, predicate, object, source).
    pub fn entries(&self) -> Vec<(Triple, String)> {
        self.entries
            .read()
            .expect("store lock")
            .iter()
            .cloned()
            .collect()
    }

    /// Sorted, de-duplicated triples, ignoring the source tag.
    pub fn distinct_triples(&self) -> Vec<Triple> {
        let guard = self.entries.read().expect("store lock");
        let mut out: Vec<Triple> = Vec::with_capacity(guard.len());
        for (t, _) in guard.iter() {
            if out.last() != Some(t) {
                out.push(t.clone());
            }
        }
        out
    }

    /// Entries whose positions equal all present arguments.
    ///
    /// Absent arguments are wildcards. Present arguments must be
    /// non-variable terms. Output order is the store order, so it does not
    /// depend on insertion order.
    pub fn matching(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<(Triple, String)> {
        debug_assert!(subject.map_or(true, |t| !t.is_variable()));
        debug_assert!(predicate.map_or(true, |t| !t.is_variable()));
        debug_assert!(object.map_or(true, |t| !t.is_variable()));
        self.entries
            .read()
            .expect("store lock")
            .iter()
            .filter(|(t, _)| {
                subject.map_or(true, |s| &t.subject == s)
                    && predicate.map_or(true, |p| &t.predicate == p)
                    && object.map_or(true, |o| &t.object == o)
            })
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(v: &str) -> Term {
        Term::iri(format!("http://{v}")).unwrap()
    }

    fn triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o)).unwrap()
    }

    #[test]
    fn duplicate_insert_is_noop() {
        let store = SourcedStore::new();
        assert!(store.insert(triple("a", "p", "b"), "http://doc"));
        assert!(!store.insert(triple("a", "p", "b"), "http://doc"));
        assert_eq!(store.len(), 1);
        // Same triple from another source is a distinct entry.
        assert!(store.insert(triple("a", "p", "b"), "http://doc2"));
        assert_eq!(store.len(), 2);
        assert_eq!(store.distinct_triples().len(), 1);
    }

    #[test]
    fn all_wildcards_return_every_entry_once() {
        let store = SourcedStore::new();
        for (i, t) in [
            triple("a", "p", "b"),
            triple("a", "p", "c"),
            triple("a", "q", "b"),
            triple("b", "p", "b"),
        ]
        .into_iter()
        .enumerate()
        {
            store.insert(t, format!("http://doc{i}"));
        }
        assert_eq!(store.matching(None, None, None).len(), 4);
    }

    #[test]
    fn absent_value_matches_nothing() {
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://doc");
        assert!(store.matching(None, Some(&iri("nosuch")), None).is_empty());
    }

    #[test]
    fn matching_on_fixed_subject_and_predicate() {
        // Store {(a,p,b),(a,p,c),(a,q,b)}: fixing s=a, p=p selects the two
        // p-entries, in object order.
        let store = SourcedStore::new();
        store.insert(triple("a", "p", "b"), "http://d");
        store.insert(triple("a", "p", "c"), "http://d");
        store.insert(triple("a", "q", "b"), "http://d");
        let hits = store.matching(Some(&iri("a")), Some(&iri("p")), None);
        assert_eq!(
            hits.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>(),
            vec![triple("a", "p", "b"), triple("a", "p", "c")]
        );
    }

    #[test]
    fn insertion_order_does_not_affect_output() {
        let triples = [
            triple("c", "p", "a"),
            triple("a", "p", "b"),
            triple("b", "q", "c"),
        ];
        let fwd = SourcedStore::new();
        for t in triples.iter() {
            fwd.insert(t.clone(), "http://d");
        }
        let rev = SourcedStore::new();
        for t in triples.iter().rev() {
            rev.insert(t.clone(), "http://d");
        }
        assert_eq!(fwd.entries(), rev.entries());
        assert_eq!(
            fwd.matching(None, Some(&iri("p")), None),
            rev.matching(None, Some(&iri("p")), None)
        );
    }

    #[test]
    fn concurrent_inserts_and_reads() {
        use std::sync::Arc;
        let store = Arc::new(SourcedStore::new());
        let mut handles = Vec::new();
        for w in 0..4 {
            let store = Arc::clone(&store);
            handles.push(std::thread::spawn(move || {
                for i in 0..50 {
                    store.insert(
                        triple(&format!("s{w}"), "p", &format!("o{i}")),
                        format!("http://doc{w}"),
                    );
                    let _ = store.matching(None, None, None);
                }
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(store.len(), 200);
    }
}
