//! Data shapes and per-pod shape indexes.
//!
//! A shape is a flat list of predicate constraints (object kind plus a
//! 0/1-to-1/unbounded cardinality) with an optional closed flag. This covers
//! exactly what the containment check consumes; boolean shape operators,
//! recursion and value sets are out of scope.

use thiserror::Error;

use crate::rdf::is_absolute_iri;

pub mod index;
pub mod parser;
pub mod translate;
pub mod validate;

pub use index::{parse_shape_index, ShapeIndex, ShapeIndexEntry};
pub use parser::{parse_shapes, write_shapes};
pub use translate::{shape_to_query, ShapeQuery, ShapeQueryPattern};
pub use validate::{validate_document, ValidationReport, Violation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("shape {shape} constrains predicate {predicate} twice")]
    DuplicatePredicate { shape: String, predicate: String },
    #[error("shape {0} has no constraints")]
    EmptyShape(String),
    #[error("not an absolute IRI: {0:?}")]
    InvalidIri(String),
    #[error("invalid cardinality: min {min} exceeds max {max}")]
    InvalidCardinality { min: u32, max: u32 },
}

/// What a constraint allows in object position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectKind {
    Iri,
    Literal,
    Any,
    /// An IRI whose referent is expected to conform to the named shape.
    ShapeRef(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateConstraint {
    pub predicate: String,
    pub kind: ObjectKind,
    /// 0 or 1.
    pub min_count: u32,
    /// 1 or unbounded.
    pub max_count: Option<u32>,
}

impl PredicateConstraint {
    pub fn new(
        predicate: impl Into<String>,
        kind: ObjectKind,
        min_count: u32,
        max_count: Option<u32>,
    ) -> Result<Self, ShapeError> {
        let predicate = predicate.into();
        if !is_absolute_iri(&predicate) {
            return Err(ShapeError::InvalidIri(predicate));
        }
        if let ObjectKind::ShapeRef(target) = &kind {
            if !is_absolute_iri(target) {
                return Err(ShapeError::InvalidIri(target.clone()));
            }
        }
        if let Some(max) = max_count {
            if min_count > max {
                return Err(ShapeError::InvalidCardinality {
                    min: min_count,
                    max,
                });
            }
        }
        Ok(PredicateConstraint {
            predicate,
            kind,
            min_count,
            max_count,
        })
    }

    /// Exactly-one constraint, the default cardinality.
    pub fn required(predicate: impl Into<String>, kind: ObjectKind) -> Result<Self, ShapeError> {
        Self::new(predicate, kind, 1, Some(1))
    }

    /// Zero-or-more constraint.
    pub fn multi(predicate: impl Into<String>, kind: ObjectKind) -> Result<Self, ShapeError> {
        Self::new(predicate, kind, 0, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub iri: String,
    pub closed: bool,
    pub constraints: Vec<PredicateConstraint>,
}

impl Shape {
    pub fn new(
        iri: impl Into<String>,
        closed: bool,
        constraints: Vec<PredicateConstraint>,
    ) -> Result<Self, ShapeError> {
        let iri = iri.into();
        if !is_absolute_iri(&iri) {
            return Err(ShapeError::InvalidIri(iri));
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &constraints {
            if !seen.insert(c.predicate.as_str()) {
                return Err(ShapeError::DuplicatePredicate {
                    shape: iri,
                    predicate: c.predicate.clone(),
                });
            }
        }
        Ok(Shape {
            iri,
            closed,
            constraints,
        })
    }

    pub fn constraint(&self, predicate: &str) -> Option<&PredicateConstraint> {
        self.constraints.iter().find(|c| c.predicate == predicate)
    }

    pub fn constrains(&self, predicate: &str) -> bool {
        self.constraint(predicate).is_some()
    }

    /// Trailing segment of the shape IRI, used for generated variable names.
    pub fn local_name(&self) -> &str {
        self.iri
            .rsplit(['#', '/'])
            .next()
            .filter(|s| !s.is_empty())
            .unwrap_or(&self.iri)
    }
}
