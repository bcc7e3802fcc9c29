//! Translation of shapes into star-shaped queries.

use crate::query::{StarPattern, TriplePattern};
use crate::rdf::Term;

use super::{ObjectKind, Shape, ShapeError};

/// A star query obtained from a shape: a fresh subject variable and one
/// pattern per constraint. Each pattern keeps the constraint kind it was
/// derived from so the containment check can reason about object
/// compatibility and shape references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeQuery {
    pub shape_iri: String,
    pub subject: Term,
    pub patterns: Vec<ShapeQueryPattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeQueryPattern {
    pub predicate: Term,
    pub object: Term,
    pub kind: ObjectKind,
}

impl ShapeQuery {
    /// Drops the kind annotations, yielding a plain star pattern.
    pub fn to_star(&self, id: usize) -> StarPattern {
        StarPattern {
            id,
            subject: self.subject.clone(),
            patterns: self
                .patterns
                .iter()
                .map(|p| {
                    TriplePattern::new(
                        self.subject.clone(),
                        p.predicate.clone(),
                        p.object.clone(),
                    )
                    .expect("generated pattern is well-formed")
                })
                .collect(),
        }
    }
}

pub fn shape_to_query(shape: &Shape) -> Result<ShapeQuery, ShapeError> {
    if shape.constraints.is_empty() {
        return Err(ShapeError::EmptyShape(shape.iri.clone()));
    }
    let local = sanitize(shape.local_name());
    let subject = Term::variable(format!("s_{local}")).expect("generated variable");
    let patterns = shape
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| ShapeQueryPattern {
            predicate: Term::Iri(c.predicate.clone()),
            object: Term::variable(format!("o_{local}_{i}")).expect("generated variable"),
            kind: c.kind.clone(),
        })
        .collect();
    Ok(ShapeQuery {
        shape_iri: shape.iri.clone(),
        subject,
        patterns,
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::PredicateConstraint;
    use std::collections::BTreeSet;

    fn post_shape() -> Shape {
        Shape::new(
            "http://ex.org/shapes/Post",
            false,
            vec![
                PredicateConstraint::required("http://ex.org/v#content", ObjectKind::Literal)
                    .unwrap(),
                PredicateConstraint::required("http://ex.org/v#creator", ObjectKind::Iri).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn one_pattern_per_constraint_with_fresh_subject() {
        let q = shape_to_query(&post_shape()).unwrap();
        assert_eq!(q.subject, Term::variable("s_Post").unwrap());
        assert_eq!(q.patterns.len(), 2);
        let star = q.to_star(0);
        assert_eq!(star.patterns.len(), 2);
        assert!(star.patterns.iter().all(|p| p.subject == q.subject));
    }

    #[test]
    fn single_constraint_shape() {
        let shape = Shape::new(
            "http://ex.org/shapes/Tagged",
            false,
            vec![PredicateConstraint::required("http://ex.org/v#tag", ObjectKind::Any).unwrap()],
        )
        .unwrap();
        let q = shape_to_query(&shape).unwrap();
        assert_eq!(q.patterns.len(), 1);
    }

    #[test]
    fn shape_ref_annotation_is_retained() {
        let shape = Shape::new(
            "http://ex.org/shapes/Post",
            false,
            vec![PredicateConstraint::required(
                "http://ex.org/v#creator",
                ObjectKind::ShapeRef("http://ex.org/shapes/Person".into()),
            )
            .unwrap()],
        )
        .unwrap();
        let q = shape_to_query(&shape).unwrap();
        assert_eq!(
            q.patterns[0].kind,
            ObjectKind::ShapeRef("http://ex.org/shapes/Person".into())
        );
    }

    #[test]
    fn degenerate_shape_is_an_error() {
        let shape = Shape::new("http://ex.org/shapes/Empty", false, vec![]).unwrap();
        assert!(matches!(
            shape_to_query(&shape),
            Err(ShapeError::EmptyShape(_))
        ));
    }

    #[test]
    fn generated_variables_are_distinct() {
        let q = shape_to_query(&post_shape()).unwrap();
        let mut vars: BTreeSet<&Term> = q.patterns.iter().map(|p| &p.object).collect();
        vars.insert(&q.subject);
        assert_eq!(vars.len(), q.patterns.len() + 1);
    }
}
