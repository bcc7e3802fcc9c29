//! Deterministic in-process stand-in for a network of linked-data pods.
//!
//! A [`DocumentNetwork`] serves RDF documents, per-pod shape indexes and
//! type indexes, and shape definition documents, all keyed by IRI. Every
//! fetch is appended to a request log with a flat simulated latency, which
//! keeps simulated time a pure linear function of the request count.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rdf::Triple;
use crate::shape::ShapeIndex;

pub mod fixture;
mod generate;

pub use fixture::{load_fixture, save_fixture, FixtureError};
pub use generate::{builtin_shape, generate_network, vocab, FamilyKind, DEFAULT_BASE};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NetsimError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown document family: {0}")]
    UnknownFamily(String),
}

/// Generation parameters. The same parameters always produce the identical
/// network, byte for byte once saved.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NetworkParams {
    pub pod_count: usize,
    /// Documents per pod for each family name.
    pub documents_per_pod: BTreeMap<String, usize>,
    pub families: Vec<FamilySpec>,
    /// Probability that pod A links into pod B, per ordered pair.
    pub inter_pod_link_density: f64,
    pub latency_ms_per_request: u64,
    /// Fraction of pods whose shape index omits one family.
    pub incomplete_index_fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FamilySpec {
    /// One of the built-in family kinds: profile, post, comment, settings.
    pub name: String,
    pub shape_iri: String,
    pub path_prefix: String,
}

impl NetworkParams {
    pub fn validate(&self) -> Result<(), NetsimError> {
        for fraction in [self.inter_pod_link_density, self.incomplete_index_fraction] {
            if !(0.0..=1.0).contains(&fraction) || fraction.is_nan() {
                return Err(NetsimError::InvalidParams(format!(
                    "fraction {fraction} outside [0, 1]"
                )));
            }
        }
        for spec in &self.families {
            FamilyKind::from_name(&spec.name)?;
        }
        for name in self.documents_per_pod.keys() {
            if !self.families.iter().any(|f| &f.name == name) {
                return Err(NetsimError::InvalidParams(format!(
                    "documentsPerPod names unknown family {name:?}"
                )));
            }
        }
        if let Some(profile) = self.families.iter().find(|f| f.name == "profile") {
            let count = self.documents_per_pod.get(&profile.name).copied().unwrap_or(1);
            if count != 1 {
                return Err(NetsimError::InvalidParams(
                    "the profile family is fixed at one document per pod".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FetchStatus {
    Ok,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestEntry {
    pub iri: String,
    pub status: FetchStatus,
    pub latency_ms: u64,
}

/// Append-only log of every fetch served by the network.
#[derive(Debug, Default)]
pub struct RequestLog {
    entries: Mutex<Vec<RequestEntry>>,
}

impl RequestLog {
    fn append(&self, entry: RequestEntry) {
        self.entries.lock().expect("request log lock").push(entry);
    }

    pub fn snapshot(&self) -> Vec<RequestEntry> {
        self.entries.lock().expect("request log lock").clone()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("request log lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reset(&self) {
        self.entries.lock().expect("request log lock").clear();
    }
}

/// What a fetch can return.
#[derive(Debug, Clone, PartialEq)]
pub enum Resource<'a> {
    Document(&'a [Triple]),
    ShapeIndexDoc(&'a ShapeIndex),
    TypeIndexDoc(&'a BTreeMap<String, Vec<String>>),
    ShapeText(&'a str),
    NotFound,
}

/// An immutable set of resources plus a request log. Fetches are safe from
/// concurrent workers; log appends are atomic and totally ordered.
#[derive(Debug, Default)]
pub struct DocumentNetwork {
    documents: BTreeMap<String, Vec<Triple>>,
    /// Keyed by pod root; served at `<podRoot>shape-index.json`.
    shape_indexes: BTreeMap<String, ShapeIndex>,
    /// Keyed by pod root; served at `<podRoot>type-index.json`.
    type_indexes: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    /// Shape definition documents, keyed by the shape IRI itself.
    shape_docs: BTreeMap<String, String>,
    allowlist: Vec<String>,
    seeds: Vec<String>,
    latency_ms: u64,
    log: RequestLog,
}

pub const SHAPE_INDEX_SUFFIX: &str = "shape-index.json";
pub const TYPE_INDEX_SUFFIX: &str = "type-index.json";

impl DocumentNetwork {
    pub fn new(latency_ms: u64, allowlist: Vec<String>) -> Self {
        DocumentNetwork {
            latency_ms,
            allowlist,
            ..Default::default()
        }
    }

    /// Resolves an IRI and logs the request.
    pub fn fetch(&self, iri: &str) -> Resource<'_> {
        let resource = self.lookup(iri);
        self.log.append(RequestEntry {
            iri: iri.to_string(),
            status: if matches!(resource, Resource::NotFound) {
                FetchStatus::NotFound
            } else {
                FetchStatus::Ok
            },
            latency_ms: self.latency_ms,
        });
        resource
    }

    fn lookup(&self, iri: &str) -> Resource<'_> {
        if let Some(doc) = self.documents.get(iri) {
            return Resource::Document(doc);
        }
        if let Some(root) = iri.strip_suffix(SHAPE_INDEX_SUFFIX) {
            if let Some(index) = self.shape_indexes.get(root) {
                return Resource::ShapeIndexDoc(index);
            }
        }
        if let Some(root) = iri.strip_suffix(TYPE_INDEX_SUFFIX) {
            if let Some(index) = self.type_indexes.get(root) {
                return Resource::TypeIndexDoc(index);
            }
        }
        if let Some(text) = self.shape_docs.get(iri) {
            return Resource::ShapeText(text);
        }
        Resource::NotFound
    }

    pub fn latency_ms(&self) -> u64 {
        self.latency_ms
    }

    pub fn allowlist(&self) -> &[String] {
        &self.allowlist
    }

    /// Suggested traversal entry points (each pod's profile document).
    pub fn seeds(&self) -> &[String] {
        &self.seeds
    }

    pub fn set_seeds(&mut self, seeds: Vec<String>) {
        self.seeds = seeds;
    }

    pub fn request_log(&self) -> &RequestLog {
        &self.log
    }

    pub fn documents(&self) -> &BTreeMap<String, Vec<Triple>> {
        &self.documents
    }

    pub fn shape_indexes(&self) -> &BTreeMap<String, ShapeIndex> {
        &self.shape_indexes
    }

    pub fn type_indexes(&self) -> &BTreeMap<String, BTreeMap<String, Vec<String>>> {
        &self.type_indexes
    }

    pub fn shape_docs(&self) -> &BTreeMap<String, String> {
        &self.shape_docs
    }

    /// IRIs of all shape-index documents.
    pub fn shape_index_iris(&self) -> Vec<String> {
        self.shape_indexes
            .keys()
            .map(|root| format!("{root}{SHAPE_INDEX_SUFFIX}"))
            .collect()
    }

    pub fn insert_document(&mut self, iri: impl Into<String>, triples: Vec<Triple>) {
        self.documents.insert(iri.into(), triples);
    }

    pub fn insert_shape_index(&mut self, pod_root: impl Into<String>, index: ShapeIndex) {
        self.shape_indexes.insert(pod_root.into(), index);
    }

    pub fn insert_type_index(
        &mut self,
        pod_root: impl Into<String>,
        index: BTreeMap<String, Vec<String>>,
    ) {
        self.type_indexes.insert(pod_root.into(), index);
    }

    pub fn insert_shape_doc(&mut self, shape_iri: impl Into<String>, text: impl Into<String>) {
        self.shape_docs.insert(shape_iri.into(), text.into());
    }

    /// Structural equality ignoring the request log.
    pub fn content_eq(&self, other: &Self) -> bool {
        self.documents == other.documents
            && self.shape_indexes == other.shape_indexes
            && self.type_indexes == other.type_indexes
            && self.shape_docs == other.shape_docs
            && self.allowlist == other.allowlist
            && self.seeds == other.seeds
            && self.latency_ms == other.latency_ms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Term;

    fn doc_triple() -> Triple {
        Triple::new(
            Term::iri("http://ex.org/a").unwrap(),
            Term::iri("http://ex.org/p").unwrap(),
            Term::iri("http://ex.org/b").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fetch_logs_every_request() {
        let mut net = DocumentNetwork::new(10, vec!["http://ex.org/".into()]);
        net.insert_document("http://ex.org/d", vec![doc_triple()]);
        assert!(matches!(net.fetch("http://ex.org/d"), Resource::Document(_)));
        assert!(matches!(net.fetch("http://ex.org/missing"), Resource::NotFound));
        let log = net.request_log().snapshot();
        assert_eq!(log.len(), 2);
        assert_eq!(log[0].status, FetchStatus::Ok);
        assert_eq!(log[1].status, FetchStatus::NotFound);
        let total: u64 = log.iter().map(|e| e.latency_ms).sum();
        assert_eq!(total, 20);
    }

    #[test]
    fn params_validation() {
        let mut params = NetworkParams {
            pod_count: 1,
            documents_per_pod: BTreeMap::new(),
            families: vec![],
            inter_pod_link_density: 0.5,
            latency_ms_per_request: 1,
            incomplete_index_fraction: 0.0,
            seed: 1,
        };
        assert!(params.validate().is_ok());
        params.inter_pod_link_density = 1.5;
        assert!(params.validate().is_err());
        params.inter_pod_link_density = 0.5;
        params.families.push(FamilySpec {
            name: "blog".into(),
            shape_iri: "http://ex.org/shapes/Blog".into(),
            path_prefix: "blogs/".into(),
        });
        assert!(matches!(
            params.validate(),
            Err(NetsimError::UnknownFamily(_))
        ));
    }
}
