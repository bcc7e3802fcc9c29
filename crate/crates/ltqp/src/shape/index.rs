//! The per-pod shape index: which shapes map to which documents.
//!
//! Served as JSON at `<podRoot>/shape-index.json`:
//!
//! ```json
//! {
//!   "domain": ["http://ex.org/pods/pod0/"],
//!   "complete": true,
//!   "entries": [
//!     {"shape": "http://...", "resources": ["http://..."], "prefixes": []}
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rdf::is_absolute_iri;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("shape index is not valid JSON: {0}")]
    Json(String),
    #[error("not an absolute IRI: {0:?}")]
    InvalidIri(String),
    #[error("entry for {shape} lists {iri} outside every domain prefix")]
    OutsideDomain { shape: String, iri: String },
    #[error("resource {0} is claimed by more than one entry")]
    DuplicateClaim(String),
    #[error("prefixes {0} and {1} overlap across entries")]
    OverlappingPrefixes(String, String),
    #[error("entry for {0} maps no resources")]
    EmptyEntry(String),
}

/// One mapping from a shape to the documents conforming to it, given as
/// explicit IRIs and/or IRI prefixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeIndexEntry {
    pub shape_iri: String,
    pub resources: Vec<String>,
    pub prefixes: Vec<String>,
}

impl ShapeIndexEntry {
    pub fn claims(&self, doc_iri: &str) -> bool {
        self.resources.iter().any(|r| r == doc_iri)
            || self.prefixes.iter().any(|p| doc_iri.starts_with(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeIndex {
    /// IRI the index document itself was served at.
    pub index_iri: String,
    pub domain: Vec<String>,
    pub complete: bool,
    pub entries: Vec<ShapeIndexEntry>,
}

impl ShapeIndex {
    pub fn new(
        index_iri: impl Into<String>,
        domain: Vec<String>,
        complete: bool,
        entries: Vec<ShapeIndexEntry>,
    ) -> Result<Self, IndexError> {
        let index = ShapeIndex {
            index_iri: index_iri.into(),
            domain,
            complete,
            entries,
        };
        index.validate()?;
        Ok(index)
    }

    /// The at-most-one entry claiming a document.
    pub fn claiming_entry(&self, doc_iri: &str) -> Option<&ShapeIndexEntry> {
        self.entries.iter().find(|e| e.claims(doc_iri))
    }

    pub fn in_domain(&self, iri: &str) -> bool {
        self.domain.iter().any(|p| iri.starts_with(p))
    }

    /// Sorted, de-duplicated shape IRIs of all entries.
    pub fn shape_iris(&self) -> Vec<String> {
        let mut iris: Vec<String> = self.entries.iter().map(|e| e.shape_iri.clone()).collect();
        iris.sort();
        iris.dedup();
        iris
    }

    fn validate(&self) -> Result<(), IndexError> {
        for prefix in &self.domain {
            if !is_absolute_iri(prefix) {
                return Err(IndexError::InvalidIri(prefix.clone()));
            }
        }
        for entry in &self.entries {
            if !is_absolute_iri(&entry.shape_iri) {
                return Err(IndexError::InvalidIri(entry.shape_iri.clone()));
            }
            if entry.resources.is_empty() && entry.prefixes.is_empty() {
                return Err(IndexError::EmptyEntry(entry.shape_iri.clone()));
            }
            for iri in entry.resources.iter().chain(entry.prefixes.iter()) {
                if !is_absolute_iri(iri) {
                    return Err(IndexError::InvalidIri(iri.clone()));
                }
                if !self.in_domain(iri) {
                    return Err(IndexError::OutsideDomain {
                        shape: entry.shape_iri.clone(),
                        iri: iri.clone(),
                    });
                }
            }
        }
        // Exclusivity: no document may be claimed twice, explicitly or via
        // a prefix of another entry.
        for (i, entry) in self.entries.iter().enumerate() {
            for resource in &entry.resources {
                for (j, other) in self.entries.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if other.claims(resource) {
                        return Err(IndexError::DuplicateClaim(resource.clone()));
                    }
                }
                if entry.prefixes.iter().any(|p| resource.starts_with(p)) {
                    // Redundant double claim within one entry is harmless.
                    continue;
                }
            }
            for prefix in &entry.prefixes {
                for (j, other) in self.entries.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for other_prefix in &other.prefixes {
                        if prefix.starts_with(other_prefix) || other_prefix.starts_with(prefix) {
                            return Err(IndexError::OverlappingPrefixes(
                                prefix.clone(),
                                other_prefix.clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes to the on-the-wire JSON schema.
    pub fn to_json(&self) -> String {
        let dto = IndexDto {
            domain: self.domain.clone(),
            complete: self.complete,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDto {
                    shape: e.shape_iri.clone(),
                    resources: e.resources.clone(),
                    prefixes: e.prefixes.clone(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&dto).expect("index serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct IndexDto {
    domain: Vec<String>,
    complete: bool,
    entries: Vec<EntryDto>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryDto {
    shape: String,
    resources: Vec<String>,
    #[serde(default)]
    prefixes: Vec<String>,
}

/// Parses and validates an index document fetched from `index_iri`.
pub fn parse_shape_index(json_text: &str, index_iri: &str) -> Result<ShapeIndex, IndexError> {
    let dto: IndexDto = serde_json::from_str(json_text).map_err(|e| IndexError::Json(e.to_string()))?;
    ShapeIndex::new(
        index_iri,
        dto.domain,
        dto.complete,
        dto.entries
            .into_iter()
            .map(|e| ShapeIndexEntry {
                shape_iri: e.shape,
                resources: e.resources,
                prefixes: e.prefixes,
            })
            .collect(),
    )
}
