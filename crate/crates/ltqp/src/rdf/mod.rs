//! RDF terms, triples and the source-tagged triple store.
//!
//! The model is deliberately narrow: IRIs, literals and query variables.
//! Blank nodes are out of scope, which keeps pattern matching and
//! containment checks free of renaming concerns.

use std::fmt;

use thiserror::Error;

pub mod ntriples;
pub mod store;

pub use store::SourcedStore;

/// IRI of `rdf:type`, the only vocabulary term the engine itself interprets.
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RdfError {
    #[error("not an absolute IRI: {0:?}")]
    InvalidIri(String),
    #[error("invalid variable name: {0:?}")]
    InvalidVariable(String),
    #[error("invalid language tag: {0:?}")]
    InvalidLanguageTag(String),
    #[error("triple {position} must be an IRI, got {term}")]
    BadTriplePosition { position: &'static str, term: String },
    #[error("triple object cannot be a variable: {0}")]
    VariableObject(String),
}

/// An RDF term: IRI, literal or query variable.
///
/// Literals carry at most one of a datatype IRI or a language tag; the
/// constructors enforce this. Comparison is purely syntactic (exact string,
/// datatype and language), with no value-space canonicalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        language: Option<String>,
    },
    Variable(String),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if is_absolute_iri(&value) {
            Ok(Term::Iri(value))
        } else {
            Err(RdfError::InvalidIri(value))
        }
    }

    /// A plain literal without datatype or language tag.
    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: None,
        }
    }

    pub fn typed_literal(
        lexical: impl Into<String>,
        datatype: impl Into<String>,
    ) -> Result<Self, RdfError> {
        let datatype = datatype.into();
        if !is_absolute_iri(&datatype) {
            return Err(RdfError::InvalidIri(datatype));
        }
        Ok(Term::Literal {
            lexical: lexical.into(),
            datatype: Some(datatype),
            language: None,
        })
    }

    pub fn lang_literal(
        lexical: impl Into<String>,
        tag: impl Into<String>,
    ) -> Result<Self, RdfError> {
        let tag = tag.into();
        if tag.is_empty() || !tag.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(RdfError::InvalidLanguageTag(tag));
        }
        Ok(Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: Some(tag),
        })
    }

    pub fn variable(name: impl Into<String>) -> Result<Self, RdfError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(RdfError::InvalidVariable(name));
        }
        Ok(Term::Variable(name))
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal { .. })
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_variable(&self) -> Option<&str> {
        match self {
            Term::Variable(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(v) => write!(f, "<{v}>"),
            Term::Literal {
                lexical,
                datatype,
                language,
            } => {
                write!(f, "\"{}\"", ntriples::escape_literal(lexical))?;
                if let Some(dt) = datatype {
                    write!(f, "^^<{dt}>")?;
                }
                if let Some(tag) = language {
                    write!(f, "@{tag}")?;
                }
                Ok(())
            }
            Term::Variable(v) => write!(f, "?{v}"),
        }
    }
}

/// An RDF statement. Subject and predicate are IRIs; the object is an IRI
/// or a literal, never a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, RdfError> {
        if !subject.is_iri() {
            return Err(RdfError::BadTriplePosition {
                position: "subject",
                term: subject.to_string(),
            });
        }
        if !predicate.is_iri() {
            return Err(RdfError::BadTriplePosition {
                position: "predicate",
                term: predicate.to_string(),
            });
        }
        if object.is_variable() {
            return Err(RdfError::VariableObject(object.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Absolute IRI check: a scheme followed by ':', no whitespace or angle
/// bracket / quote characters anywhere.
pub fn is_absolute_iri(value: &str) -> bool {
    let mut chars = value.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    let mut saw_colon = false;
    for c in chars.by_ref() {
        if c == ':' {
            saw_colon = true;
            break;
        }
        if !(c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.') {
            return false;
        }
    }
    saw_colon
        && !value
            .chars()
            .any(|c| c.is_whitespace() || c == '<' || c == '>' || c == '"')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_must_be_absolute() {
        assert!(Term::iri("http://ex.org/a").is_ok());
        assert!(Term::iri("urn:uuid:abc").is_ok());
        assert!(Term::iri("relative/path").is_err());
        assert!(Term::iri("http://ex.org/with space").is_err());
        assert!(Term::iri("").is_err());
        assert!(Term::iri("1http://x").is_err());
    }

    #[test]
    fn variable_names_validated() {
        assert!(Term::variable("x").is_ok());
        assert!(Term::variable("").is_err());
        assert!(Term::variable("a b").is_err());
    }

    #[test]
    fn literal_constructors_are_exclusive() {
        let typed = Term::typed_literal("5", "http://www.w3.org/2001/XMLSchema#integer").unwrap();
        match typed {
            Term::Literal {
                datatype, language, ..
            } => {
                assert!(datatype.is_some());
                assert!(language.is_none());
            }
            _ => panic!("not a literal"),
        }
        assert!(Term::lang_literal("hi", "en").is_ok());
        assert!(Term::lang_literal("hi", "").is_err());
        assert!(Term::typed_literal("x", "notairi").is_err());
    }

    #[test]
    fn triple_positions_validated() {
        let a = Term::iri("http://ex.org/a").unwrap();
        let p = Term::iri("http://ex.org/p").unwrap();
        let lit = Term::literal("v");
        let var = Term::variable("x").unwrap();
        assert!(Triple::new(a.clone(), p.clone(), lit.clone()).is_ok());
        assert!(Triple::new(lit.clone(), p.clone(), a.clone()).is_err());
        assert!(Triple::new(a.clone(), lit, a.clone()).is_err());
        assert!(Triple::new(a, p, var).is_err());
    }

    #[test]
    fn term_ordering_is_stable() {
        let iri = Term::iri("http://ex.org/a").unwrap();
        let lit = Term::literal("a");
        let var = Term::variable("a").unwrap();
        assert!(iri < lit);
        assert!(lit < var);
    }
}
