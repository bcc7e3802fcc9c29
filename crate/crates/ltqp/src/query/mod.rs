//! SPARQL SELECT subset: basic graph patterns, star decomposition and
//! evaluation over a [`SourcedStore`](crate::rdf::SourcedStore).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::rdf::Term;

pub mod eval;
pub mod parser;

pub use eval::{canonical_solution, evaluate_bgp, evaluate_query, Solution};
pub use parser::parse_select;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QueryError {
    /// A syntactically recognizable feature outside the supported subset.
    #[error("unsupported query feature: {0}")]
    Unsupported(String),
    #[error("unknown prefix: {0}")]
    UnknownPrefix(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("projected variable ?{0} does not occur in the pattern")]
    UnboundProjection(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

/// One triple pattern of a basic graph pattern. Any position may hold a
/// variable; literals are confined to the object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl TriplePattern {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, QueryError> {
        if subject.is_literal() {
            return Err(QueryError::InvalidPattern(format!(
                "literal subject {subject}"
            )));
        }
        if predicate.is_literal() {
            return Err(QueryError::InvalidPattern(format!(
                "literal predicate {predicate}"
            )));
        }
        Ok(TriplePattern {
            subject,
            predicate,
            object,
        })
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|t| t.as_variable())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectQuery {
    pub projection: Projection,
    pub bgp: Vec<TriplePattern>,
    pub prefixes: BTreeMap<String, String>,
}

impl SelectQuery {
    /// All variables appearing anywhere in the graph pattern, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        self.bgp
            .iter()
            .flat_map(|p| p.variables().map(str::to_string))
            .collect()
    }
}

/// The patterns of a graph pattern that share one subject term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPattern {
    pub id: usize,
    pub subject: Term,
    pub patterns: Vec<TriplePattern>,
}

impl StarPattern {
    /// Constant (IRI) predicates of this star, de-duplicated.
    pub fn constant_predicates(&self) -> BTreeSet<&str> {
        self.patterns
            .iter()
            .filter_map(|p| p.predicate.as_iri())
            .collect()
    }

    pub fn has_variable_predicate(&self) -> bool {
        self.patterns.iter().any(|p| p.predicate.is_variable())
    }
}

/// A link between stars: some pattern of `from` has predicate `via` and a
/// variable object equal to the subject variable of `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDependency {
    pub from: usize,
    pub via: Term,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    pub stars: Vec<StarPattern>,
    pub dependencies: Vec<StarDependency>,
}

/// Groups a graph pattern into stars by syntactic subject, in order of
/// first appearance, and derives the dependency edges between them.
pub fn decompose_stars(bgp: &[TriplePattern]) -> StarDecomposition {
    let mut stars: Vec<StarPattern> = Vec::new();
    for pattern in bgp {
        match stars.iter_mut().find(|s| s.subject == pattern.subject) {
            Some(star) => star.patterns.push(pattern.clone()),
            None => stars.push(StarPattern {
                id: stars.len(),
                subject: pattern.subject.clone(),
                patterns: vec![pattern.clone()],
            }),
        }
    }
    let mut dependencies = Vec::new();
    for star in &stars {
        for pattern in &star.patterns {
            if let Term::Variable(v) = &pattern.object {
                for target in &stars {
                    if target.subject.as_variable() == Some(v.as_str()) {
                        dependencies.push(StarDependency {
                            from: star.id,
                            via: pattern.predicate.clone(),
                            to: target.id,
                        });
                    }
                }
            }
        }
    }
    StarDecomposition {
        stars,
        dependencies,
    }
}
