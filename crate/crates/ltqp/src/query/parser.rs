//! Parser for the supported SELECT subset.
//!
//! Grammar: optional `PREFIX` declarations, then
//! `SELECT (?v... | *) WHERE { tp ( . tp )* .? }` where each pattern term
//! is `<iri>`, `prefix:local`, `?var` or a literal with an optional
//! `^^<iri>` or `@tag` suffix.
//!
//! Anything outside the subset that is still recognizable is reported as an
//! unsupported feature naming the token: property-path operators after a
//! predicate, nested groups, and the FILTER / OPTIONAL / UNION keywords.

use std::collections::BTreeMap;

use crate::rdf::Term;

use super::{Projection, QueryError, SelectQuery, TriplePattern};

pub fn parse_select(text: &str) -> Result<SelectQuery, QueryError> {
    let tokens = lex(text)?;
    Parser { tokens, pos: 0 }.parse()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    PName { prefix: String, local: String },
    Iri(String),
    Var(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        language: Option<String>,
    },
    LBrace,
    RBrace,
    Dot,
    Star,
    Plus,
    Slash,
    Pipe,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => w.clone(),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Iri(v) => format!("<{v}>"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Literal { lexical, .. } => format!("\"{lexical}\""),
            Tok::LBrace => "{".into(),
            Tok::RBrace => "}".into(),
            Tok::Dot => ".".into(),
            Tok::Star => "*".into(),
            Tok::Plus => "+".into(),
            Tok::Slash => "/".into(),
            Tok::Pipe => "|".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, QueryError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let err = |line: usize, msg: String| QueryError::Syntax { line, msg };
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '{' => {
                chars.next();
                out.push((Tok::LBrace, line));
            }
            '}' => {
                chars.next();
                out.push((Tok::RBrace, line));
            }
            '.' => {
                chars.next();
                out.push((Tok::Dot, line));
            }
            '*' => {
                chars.next();
                out.push((Tok::Star, line));
            }
            '+' => {
                chars.next();
                out.push((Tok::Plus, line));
            }
            '/' => {
                chars.next();
                out.push((Tok::Slash, line));
            }
            '|' => {
                chars.next();
                out.push((Tok::Pipe, line));
            }
            '<' => {
                chars.next();
                let mut iri = String::new();
                loop {
                    match chars.next() {
                        Some('>') => break,
                        Some(c) => iri.push(c),
                        None => return Err(err(line, "unterminated IRI".into())),
                    }
                }
                out.push((Tok::Iri(iri), line));
            }
            '?' => {
                chars.next();
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(err(line, "empty variable name".into()));
                }
                out.push((Tok::Var(name), line));
            }
            '"' => {
                chars.next();
                let mut lexical = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some('\\') => lexical.push('\\'),
                            Some('"') => lexical.push('"'),
                            Some('n') => lexical.push('\n'),
                            Some('r') => lexical.push('\r'),
                            Some('t') => lexical.push('\t'),
                            Some(c) => return Err(err(line, format!("unknown escape \\{c}"))),
                            None => return Err(err(line, "unterminated literal".into())),
                        },
                        Some('\n') => return Err(err(line, "unterminated literal".into())),
                        Some(c) => lexical.push(c),
                        None => return Err(err(line, "unterminated literal".into())),
                    }
                }
                let mut datatype = None;
                let mut language = None;
                if chars.peek() == Some(&'^') {
                    chars.next();
                    if chars.next() != Some('^') || chars.next() != Some('<') {
                        return Err(err(line, "expected ^^<iri> after literal".into()));
                    }
                    let mut dt = String::new();
                    loop {
                        match chars.next() {
                            Some('>') => break,
                            Some(c) => dt.push(c),
                            None => return Err(err(line, "unterminated datatype IRI".into())),
                        }
                    }
                    datatype = Some(dt);
                } else if chars.peek() == Some(&'@') {
                    chars.next();
                    let mut tag = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '-' {
                            tag.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    language = Some(tag);
                }
                out.push((
                    Tok::Literal {
                        lexical,
                        datatype,
                        language,
                    },
                    line,
                ));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&':') {
                    chars.next();
                    let mut local = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                            local.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((
                        Tok::PName {
                            prefix: word,
                            local,
                        },
                        line,
                    ));
                } else {
                    out.push((Tok::Word(word), line));
                }
            }
            other => return Err(err(line, format!("unexpected character {other:?}"))),
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

    fn syntax(&self, msg: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            line: self.line(),
            msg: msg.into(),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        match self.next() {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw) => Ok(()),
            Some(t) => Err(self.syntax(format!("expected {kw}, found {}", t.describe()))),
            None => Err(self.syntax(format!("expected {kw}, found end of input"))),
        }
    }

    fn parse(mut self) -> Result<SelectQuery, QueryError> {
        let mut prefixes: BTreeMap<String, String> = BTreeMap::new();
        while matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case("PREFIX")) {
            self.next();
            let (prefix, local) = match self.next() {
                Some(Tok::PName { prefix, local }) => (prefix, local),
                other => {
                    return Err(self.syntax(format!(
                        "expected prefix name, found {}",
                        other.map(|t| t.describe()).unwrap_or_default()
                    )))
                }
            };
            if !local.is_empty() {
                return Err(self.syntax(format!("malformed prefix declaration {prefix}:{local}")));
            }
            let iri = match self.next() {
                Some(Tok::Iri(v)) => v,
                _ => return Err(self.syntax("expected <iri> in prefix declaration")),
            };
            prefixes.insert(prefix, iri);
        }

        self.expect_keyword("SELECT")?;
        let projection = if matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            Projection::All
        } else {
            let mut vars = Vec::new();
            while let Some(Tok::Var(_)) = self.peek() {
                if let Some(Tok::Var(v)) = self.next() {
                    vars.push(v);
                }
            }
            if vars.is_empty() {
                return Err(self.syntax("SELECT needs * or at least one variable"));
            }
            Projection::Vars(vars)
        };

        self.expect_keyword("WHERE")?;
        match self.next() {
            Some(Tok::LBrace) => {}
            _ => return Err(self.syntax("expected '{'")),
        }

        let mut bgp = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.next();
                    break;
                }
                None => return Err(self.syntax("unterminated group pattern")),
                _ => {}
            }
            let subject = self.parse_term(&prefixes)?;
            let predicate = self.parse_term(&prefixes)?;
            // A path operator directly after the predicate means a property
            // path, which is outside the subset.
            if let Some(op @ (Tok::Slash | Tok::Plus | Tok::Star | Tok::Pipe)) = self.peek() {
                return Err(QueryError::Unsupported(format!(
                    "property path operator '{}'",
                    op.describe()
                )));
            }
            let object = self.parse_term(&prefixes)?;
            bgp.push(
                TriplePattern::new(subject, predicate, object)
                    .map_err(|e| self.syntax(e.to_string()))?,
            );
            match self.peek() {
                Some(Tok::Dot) => {
                    self.next();
                }
                Some(Tok::RBrace) => {}
                Some(t) => {
                    let t = t.clone();
                    self.check_unsupported(&t)?;
                    return Err(self.syntax(format!("expected '.', found {}", t.describe())));
                }
                None => return Err(self.syntax("unterminated group pattern")),
            }
        }

        if bgp.is_empty() {
            return Err(self.syntax("empty group pattern"));
        }
        if self.peek().is_some() {
            return Err(self.syntax(format!(
                "unexpected content after '}}': {}",
                self.peek().unwrap().describe()
            )));
        }

        if let Projection::Vars(vars) = &projection {
            let bound = SelectQuery {
                projection: Projection::All,
                bgp: bgp.clone(),
                prefixes: prefixes.clone(),
            }
            .variables();
            for v in vars {
                if !bound.contains(v) {
                    return Err(QueryError::UnboundProjection(v.clone()));
                }
            }
        }

        Ok(SelectQuery {
            projection,
            bgp,
            prefixes,
        })
    }

    fn check_unsupported(&self, tok: &Tok) -> Result<(), QueryError> {
        match tok {
            Tok::Word(w)
                if ["FILTER", "OPTIONAL", "UNION"]
                    .iter()
                    .any(|kw| w.eq_ignore_ascii_case(kw)) =>
            {
                Err(QueryError::Unsupported(w.to_ascii_uppercase()))
            }
            Tok::LBrace => Err(QueryError::Unsupported("nested group '{'".into())),
            _ => Ok(()),
        }
    }

    fn parse_term(&mut self, prefixes: &BTreeMap<String, String>) -> Result<Term, QueryError> {
        if let Some(t) = self.peek() {
            let t = t.clone();
            self.check_unsupported(&t)?;
        }
        match self.next() {
            Some(Tok::Iri(v)) => Term::iri(v).map_err(|e| self.syntax(e.to_string())),
            Some(Tok::PName { prefix, local }) => {
                let base = prefixes
                    .get(&prefix)
                    .ok_or(QueryError::UnknownPrefix(prefix))?;
                Term::iri(format!("{base}{local}")).map_err(|e| self.syntax(e.to_string()))
            }
            Some(Tok::Var(v)) => Term::variable(v).map_err(|e| self.syntax(e.to_string())),
            Some(Tok::Literal {
                lexical,
                datatype,
                language,
            }) => match (datatype, language) {
                (Some(dt), _) => {
                    Term::typed_literal(lexical, dt).map_err(|e| self.syntax(e.to_string()))
                }
                (_, Some(tag)) => {
                    Term::lang_literal(lexical, tag).map_err(|e| self.syntax(e.to_string()))
                }
                _ => Ok(Term::literal(lexical)),
            },
            Some(t) => Err(self.syntax(format!("unexpected token {}", t.describe()))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
