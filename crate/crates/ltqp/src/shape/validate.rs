//! Document validation against a shape.
//!
//! Validation is per document and shallow: a shape reference only requires
//! the object to be an IRI, the referenced document is not fetched.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::rdf::{Term, Triple};

use super::{ObjectKind, Shape};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("{subject}: missing predicate {predicate}")]
    MissingPredicate { subject: String, predicate: String },
    #[error("{subject}: predicate {predicate} occurs {count} times, at most one allowed")]
    TooManyValues {
        subject: String,
        predicate: String,
        count: usize,
    },
    #[error("{subject}: object {object} does not match the declared kind for {predicate}")]
    ObjectKindMismatch {
        subject: String,
        predicate: String,
        object: String,
    },
    #[error("{subject}: closed-shape extra predicate {predicate}")]
    ClosedExtraPredicate { subject: String, predicate: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub conformant: bool,
    pub violations: Vec<Violation>,
}

/// Checks every subject of the document that uses at least one constrained
/// predicate. Subjects untouched by the shape's vocabulary are ignored.
pub fn validate_document(doc: &[Triple], shape: &Shape) -> ValidationReport {
    let mut by_subject: BTreeMap<&Term, Vec<&Triple>> = BTreeMap::new();
    for t in doc {
        by_subject.entry(&t.subject).or_default().push(t);
    }

    let mut violations = Vec::new();
    for (subject, triples) in by_subject {
        let touches_shape = triples
            .iter()
            .any(|t| t.predicate.as_iri().is_some_and(|p| shape.constrains(p)));
        if !touches_shape {
            continue;
        }
        let subject_str = subject.to_string();
        for constraint in &shape.constraints {
            let values: Vec<&&Triple> = triples
                .iter()
                .filter(|t| t.predicate.as_iri() == Some(constraint.predicate.as_str()))
                .collect();
            if constraint.min_count > 0 && values.is_empty() {
                violations.push(Violation::MissingPredicate {
                    subject: subject_str.clone(),
                    predicate: constraint.predicate.clone(),
                });
            }
            if let Some(max) = constraint.max_count {
                if values.len() > max as usize {
                    violations.push(Violation::TooManyValues {
                        subject: subject_str.clone(),
                        predicate: constraint.predicate.clone(),
                        count: values.len(),
                    });
                }
            }
            for t in values {
                if !kind_matches(&constraint.kind, &t.object) {
                    violations.push(Violation::ObjectKindMismatch {
                        subject: subject_str.clone(),
                        predicate: constraint.predicate.clone(),
                        object: t.object.to_string(),
                    });
                }
            }
        }
        if shape.closed {
            for t in &triples {
                let known = t.predicate.as_iri().is_some_and(|p| shape.constrains(p));
                if !known {
                    violations.push(Violation::ClosedExtraPredicate {
                        subject: subject_str.clone(),
                        predicate: t.predicate.to_string(),
                    });
                }
            }
        }
    }

    ValidationReport {
        conformant: violations.is_empty(),
        violations,
    }
}

fn kind_matches(kind: &ObjectKind, object: &Term) -> bool {
    match kind {
        ObjectKind::Any => true,
        ObjectKind::Iri | ObjectKind::ShapeRef(_) => object.is_iri(),
        ObjectKind::Literal => object.is_literal(),
    }
}
