//! Query-shape containment and reachability adaptation.
//!
//! For every (star, shape) pair the binding check compares the star's
//! constant predicates against the shape's constraint predicates, with
//! object-kind compatibility. The check is syntactic: for star-shaped
//! queries whose shapes constrain each predicate once, it coincides with
//! homomorphism-based containment, under the index guarantee that data
//! conforming to a shape lives only inside that shape's mapped documents.
//!
//! The aggregate outcome per star selects one of three traversal
//! adaptations:
//!
//! - every star fully bound or unbound: prune everything not mapped to a
//!   matched shape, even when the index is incomplete;
//! - some star partially bound, complete index: additionally visit every
//!   resource mapped to a partially bound shape;
//! - some star partially bound, incomplete index: the index can only assist
//!   discovery, nothing may be pruned.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::query::{StarDecomposition, StarPattern};
use crate::rdf::Term;
use crate::shape::{ObjectKind, Shape, ShapeIndex};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ContainmentError {
    #[error("shape not resolvable: {0}")]
    MissingShape(String),
}

/// Outcome classes in increasing strength; the per-star class is the best
/// outcome over all shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BindingClass {
    None,
    Partial,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingOutcome {
    pub class: BindingClass,
    /// Constant star predicates that matched a constraint.
    pub matched_predicates: BTreeSet<String>,
}

/// Decides how one star binds to one shape.
///
/// A constant predicate matches when the shape constrains it and every
/// pattern carrying it is object-kind compatible with the constraint. The
/// star is fully bound when all of its constant predicates match and none
/// of its predicates is a variable; it has no binding when none match. A
/// variable predicate can match any constraint, so such a star is always
/// partially and at most partially bound.
pub fn bind_star_to_shape(star: &StarPattern, shape: &Shape) -> BindingOutcome {
    let mut constant: BTreeMap<&str, Vec<&Term>> = BTreeMap::new();
    for pattern in &star.patterns {
        if let Some(p) = pattern.predicate.as_iri() {
            constant.entry(p).or_default().push(&pattern.object);
        }
    }
    let matched_predicates: BTreeSet<String> = constant
        .iter()
        .filter(|(p, objects)| {
            shape.constraint(p).is_some_and(|c| {
                objects.iter().all(|o| object_compatible(&c.kind, o))
            })
        })
        .map(|(p, _)| p.to_string())
        .collect();

    let class = if star.has_variable_predicate() {
        BindingClass::Partial
    } else if !constant.is_empty() && matched_predicates.len() == constant.len() {
        BindingClass::Full
    } else if matched_predicates.is_empty() {
        BindingClass::None
    } else {
        BindingClass::Partial
    };
    let matched_predicates = if class == BindingClass::None {
        BTreeSet::new()
    } else {
        matched_predicates
    };
    BindingOutcome {
        class,
        matched_predicates,
    }
}

fn object_compatible(kind: &ObjectKind, object: &Term) -> bool {
    match object {
        Term::Variable(_) => true,
        Term::Iri(_) => !matches!(kind, ObjectKind::Literal),
        Term::Literal { .. } => !matches!(kind, ObjectKind::Iri | ObjectKind::ShapeRef(_)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    pub per_pair: BTreeMap<(usize, String), BindingOutcome>,
    pub per_star: BTreeMap<usize, BindingClass>,
    /// Shapes with at least one fully bound star.
    pub matched_shapes: BTreeSet<String>,
    /// Shapes with a partial binding and no full binding.
    pub partial_shapes: BTreeSet<String>,
    /// Every shape that participated in the check.
    pub shape_iris: BTreeSet<String>,
}

/// Binds every star against every indexed shape, then applies one
/// dependency-refinement pass: when star A is fully bound to shape S whose
/// constraint at predicate p references shape T, and the decomposition has
/// a dependency (A, p, B), then B's data reached through A must conform to
/// T, so B's outcome against any other shape is capped at partial.
pub fn solve_containment(
    decomposition: &StarDecomposition,
    index: &ShapeIndex,
    shapes: &BTreeMap<String, Shape>,
) -> Result<ContainmentReport, ContainmentError> {
    let shape_iris = index.shape_iris();
    for iri in &shape_iris {
        if !shapes.contains_key(iri) {
            return Err(ContainmentError::MissingShape(iri.clone()));
        }
    }

    let mut per_pair: BTreeMap<(usize, String), BindingOutcome> = BTreeMap::new();
    for star in &decomposition.stars {
        for iri in &shape_iris {
            per_pair.insert(
                (star.id, iri.clone()),
                bind_star_to_shape(star, &shapes[iri]),
            );
        }
    }

    // Single refinement pass over the unrefined outcomes.
    let mut caps: Vec<(usize, String)> = Vec::new();
    for star in &decomposition.stars {
        for iri in &shape_iris {
            if per_pair[&(star.id, iri.clone())].class != BindingClass::Full {
                continue;
            }
            for constraint in &shapes[iri].constraints {
                let ObjectKind::ShapeRef(target) = &constraint.kind else {
                    continue;
                };
                for dep in &decomposition.dependencies {
                    if dep.from == star.id
                        && dep.via.as_iri() == Some(constraint.predicate.as_str())
                    {
                        for other in shape_iris.iter().filter(|s| *s != target) {
                            caps.push((dep.to, other.clone()));
                        }
                    }
                }
            }
        }
    }
    for key in caps {
        if let Some(outcome) = per_pair.get_mut(&key) {
            if outcome.class == BindingClass::Full {
                outcome.class = BindingClass::Partial;
            }
        }
    }

    let mut per_star = BTreeMap::new();
    for star in &decomposition.stars {
        let best = shape_iris
            .iter()
            .map(|iri| per_pair[&(star.id, iri.clone())].class)
            .max()
            .unwrap_or(BindingClass::None);
        per_star.insert(star.id, best);
    }

    let mut matched_shapes = BTreeSet::new();
    let mut partial_shapes = BTreeSet::new();
    for iri in &shape_iris {
        let classes: Vec<BindingClass> = decomposition
            .stars
            .iter()
            .map(|s| per_pair[&(s.id, iri.clone())].class)
            .collect();
        if classes.contains(&BindingClass::Full) {
            matched_shapes.insert(iri.clone());
        } else if classes.contains(&BindingClass::Partial) {
            partial_shapes.insert(iri.clone());
        }
    }

    Ok(ContainmentReport {
        per_pair,
        per_star,
        matched_shapes,
        partial_shapes,
        shape_iris: shape_iris.into_iter().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdaptationMode {
    PruneUnmatched,
    VisitPartial,
    DiscoveryOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityDecision {
    pub mode: AdaptationMode,
    pub allowed_shapes: BTreeSet<String>,
}

/// Maps the aggregated report and the index completeness flag onto the
/// three traversal adaptations.
pub fn decide_adaptation(report: &ContainmentReport, complete: bool) -> ReachabilityDecision {
    let all_full_or_none = report
        .per_star
        .values()
        .all(|c| matches!(c, BindingClass::Full | BindingClass::None));
    if all_full_or_none {
        ReachabilityDecision {
            mode: AdaptationMode::PruneUnmatched,
            allowed_shapes: report.matched_shapes.clone(),
        }
    } else if complete {
        ReachabilityDecision {
            mode: AdaptationMode::VisitPartial,
            allowed_shapes: report
                .matched_shapes
                .union(&report.partial_shapes)
                .cloned()
                .collect(),
        }
    } else {
        ReachabilityDecision {
            mode: AdaptationMode::DiscoveryOnly,
            allowed_shapes: report.shape_iris.clone(),
        }
    }
}
