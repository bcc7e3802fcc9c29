//! FIFO link frontier with global de-duplication.

use std::collections::{HashSet, VecDeque};

/// Pending and visited IRIs of one traversal. An IRI enters the queue at
/// most once: pending and visited are disjoint and never forget.
#[derive(Debug, Default)]
pub struct LinkQueue {
    pending: VecDeque<String>,
    pending_set: HashSet<String>,
    visited: HashSet<String>,
}

impl LinkQueue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Enqueues an IRI unless it was ever seen; returns whether it was added.
    pub fn enqueue(&mut self, iri: &str) -> bool {
        if self.is_seen(iri) {
            return false;
        }
        self.pending.push_back(iri.to_string());
        self.pending_set.insert(iri.to_string());
        true
    }

    /// Pops the next IRI and marks it visited.
    pub fn pop(&mut self) -> Option<String> {
        let iri = self.pending.pop_front()?;
        self.pending_set.remove(&iri);
        self.visited.insert(iri.clone());
        Some(iri)
    }

    /// Records an out-of-band fetch (index or shape documents) so the IRI
    /// can never be queued again.
    pub fn mark_visited(&mut self, iri: &str) {
        if self.pending_set.remove(iri) {
            self.pending.retain(|p| p != iri);
        }
        self.visited.insert(iri.to_string());
    }

    pub fn is_seen(&self, iri: &str) -> bool {
        self.pending_set.contains(iri) || self.visited.contains(iri)
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    pub fn visited(&self) -> &HashSet<String> {
        &self.visited
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enqueue_is_once_per_traversal() {
        let mut q = LinkQueue::new();
        assert!(q.enqueue("http://a"));
        assert!(!q.enqueue("http://a"));
        assert_eq!(q.pop().as_deref(), Some("http://a"));
        // Visited IRIs never re-enter.
        assert!(!q.enqueue("http://a"));
        assert!(q.pop().is_none());
    }

    #[test]
    fn fifo_order() {
        let mut q = LinkQueue::new();
        q.enqueue("http://a");
        q.enqueue("http://b");
        q.enqueue("http://c");
        assert_eq!(q.pop().as_deref(), Some("http://a"));
        assert_eq!(q.pop().as_deref(), Some("http://b"));
        assert_eq!(q.pop().as_deref(), Some("http://c"));
    }

    #[test]
    fn pending_and_visited_stay_disjoint() {
        let mut q = LinkQueue::new();
        q.enqueue("http://a");
        q.enqueue("http://b");
        q.mark_visited("http://a");
        assert_eq!(q.pending_len(), 1);
        assert_eq!(q.pop().as_deref(), Some("http://b"));
        assert!(q.visited().contains("http://a"));
    }
}
