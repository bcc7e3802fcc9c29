//! Parser and writer for the compact shape syntax.
//!
//! ```text
//! <shapeIri> {
//!   <predIri> (IRI | LITERAL | . | @<shapeIri>) cardinality? ( ; ... )*
//! } CLOSED?
//! ```
//!
//! Cardinality is `?` (0..1), `*` (0..n) or `+` (1..n); omitted means
//! exactly one. Blank lines and `#` comment lines are ignored.

use super::{ObjectKind, PredicateConstraint, Shape, ShapeError};

pub fn parse_shapes(text: &str) -> Result<Vec<Shape>, ShapeError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut shapes = Vec::new();
    while parser.peek().is_some() {
        shapes.push(parser.parse_shape()?);
    }
    Ok(shapes)
}

/// Renders shapes back into the concrete syntax; `parse_shapes` on the
/// output reproduces the input ASTs.
pub fn write_shapes(shapes: &[Shape]) -> String {
    let mut out = String::new();
    for (i, shape) in shapes.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("<{}> {{\n", shape.iri));
        for (j, c) in shape.constraints.iter().enumerate() {
            out.push_str(&format!("  <{}> ", c.predicate));
            match &c.kind {
                ObjectKind::Iri => out.push_str("IRI"),
                ObjectKind::Literal => out.push_str("LITERAL"),
                ObjectKind::Any => out.push('.'),
                ObjectKind::ShapeRef(target) => out.push_str(&format!("@<{target}>")),
            }
            match (c.min_count, c.max_count) {
                (1, Some(1)) => {}
                (0, Some(1)) => out.push_str(" ?"),
                (0, None) => out.push_str(" *"),
                (1, None) => out.push_str(" +"),
                (min, max) => unreachable!("unrepresentable cardinality {min}..{max:?}"),
            }
            if j + 1 < shape.constraints.len() {
                out.push_str(" ;");
            }
            out.push('\n');
        }
        out.push('}');
        if shape.closed {
            out.push_str(" CLOSED");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    ShapeRef(String),
    Word(String),
    LBrace,
    RBrace,
    Semi,
    Dot,
    Question,
    Star,
    Plus,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ShapeError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut chars = raw.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    chars.next();
                }
                '{' => {
                    chars.next();
                    out.push((Tok::LBrace, line));
                }
                '}' => {
                    chars.next();
                    out.push((Tok::RBrace, line));
                }
                ';' => {
                    chars.next();
                    out.push((Tok::Semi, line));
                }
                '.' => {
                    chars.next();
                    out.push((Tok::Dot, line));
                }
                '?' => {
                    chars.next();
                    out.push((Tok::Question, line));
                }
                '*' => {
                    chars.next();
                    out.push((Tok::Star, line));
                }
                '+' => {
                    chars.next();
                    out.push((Tok::Plus, line));
                }
                '<' | '@' => {
                    let is_ref = c == '@';
                    chars.next();
                    if is_ref {
                        if chars.next() != Some('<') {
                            return Err(ShapeError::Parse {
                                line,
                                msg: "expected '<' after '@'".into(),
                            });
                        }
                    }
                    let mut iri = String::new();
                    let mut closed_ok = false;
                    for c in chars.by_ref() {
                        if c == '>' {
                            closed_ok = true;
                            break;
                        }
                        iri.push(c);
                    }
                    if !closed_ok {
                        return Err(ShapeError::Parse {
                            line,
                            msg: "unterminated IRI".into(),
                        });
                    }
                    out.push((
                        if is_ref {
                            Tok::ShapeRef(iri)
                        } else {
                            Tok::Iri(iri)
                        },
                        line,
                    ));
                }
                c if c.is_ascii_alphabetic() => {
                    let mut word = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_alphanumeric() {
                            word.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Word(word), line));
                }
                other => {
                    return Err(ShapeError::Parse {
                        line,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|(_, l)| *l)
            .unwrap_or(1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ShapeError {
        ShapeError::Parse {
            line: self.line(),
            msg: msg.into(),
        }
    }

    fn parse_shape(&mut self) -> Result<Shape, ShapeError> {
        let iri = match self.next() {
            Some(Tok::Iri(v)) => v,
            _ => return Err(self.error("expected shape IRI")),
        };
        if self.next() != Some(Tok::LBrace) {
            return Err(self.error("expected '{'"));
        }
        let mut constraints = Vec::new();
        loop {
            constraints.push(self.parse_constraint()?);
            match self.next() {
                Some(Tok::Semi) => continue,
                Some(Tok::RBrace) => break,
                _ => return Err(self.error("expected ';' or '}'")),
            }
        }
        let mut closed = false;
        if matches!(self.peek(), Some(Tok::Word(w)) if w == "CLOSED") {
            self.next();
            closed = true;
        }
        Shape::new(iri, closed, constraints)
    }

    fn parse_constraint(&mut self) -> Result<PredicateConstraint, ShapeError> {
        let predicate = match self.next() {
            Some(Tok::Iri(v)) => v,
            _ => return Err(self.error("expected predicate IRI")),
        };
        let kind = match self.next() {
            Some(Tok::Word(w)) if w == "IRI" => ObjectKind::Iri,
            Some(Tok::Word(w)) if w == "LITERAL" => ObjectKind::Literal,
            Some(Tok::Dot) => ObjectKind::Any,
            Some(Tok::ShapeRef(target)) => ObjectKind::ShapeRef(target),
            _ => return Err(self.error("expected IRI, LITERAL, '.' or @<shape>")),
        };
        let (min, max) = match self.peek() {
            Some(Tok::Question) => {
                self.next();
                (0, Some(1))
            }
            Some(Tok::Star) => {
                self.next();
                (0, None)
            }
            Some(Tok::Plus) => {
                self.next();
                (1, None)
            }
            _ => (1, Some(1)),
        };
        PredicateConstraint::new(predicate, kind, min, max)
    }
}
