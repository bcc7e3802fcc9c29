//! Line-oriented N-Triples subset: IRIs and literals only, no blank nodes.
//!
//! Blank lines and lines starting with `#` are skipped. Every other line
//! must be `<s> <p> <o> .` where the object is an IRI or a literal with an
//! optional `^^<datatype>` or `@lang` suffix.

use thiserror::Error;

use super::{Term, Triple};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {reason} in {text:?}")]
pub struct NtParseError {
    /// 1-based line number of the offending line.
    pub line: usize,
    pub reason: String,
    pub text: String,
}

pub fn parse(text: &str) -> Result<Vec<Triple>, NtParseError> {
    let mut triples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let triple = parse_line(line).map_err(|reason| NtParseError {
            line: idx + 1,
            reason,
            text: raw.to_string(),
        })?;
        triples.push(triple);
    }
    Ok(triples)
}

pub fn serialize(triples: &[Triple]) -> String {
    let mut out = String::new();
    for t in triples {
        debug_assert!(!t.object.is_variable());
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

fn parse_line(line: &str) -> Result<Triple, String> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    let subject = cur.parse_iri_ref()?;
    cur.skip_ws();
    let predicate = cur.parse_iri_ref()?;
    cur.skip_ws();
    let object = match cur.peek() {
        Some('<') => cur.parse_iri_ref()?,
        Some('"') => cur.parse_literal()?,
        Some(c) => return Err(format!("unexpected object start {c:?}")),
        None => return Err("missing object".into()),
    };
    cur.skip_ws();
    if !cur.eat('.') {
        return Err("missing terminating '.'".into());
    }
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err("trailing content after '.'".into());
    }
    Triple::new(subject, predicate, object).map_err(|e| e.to_string())
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { rest: s }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ') | Some('\t')) {
            self.bump();
        }
    }

    fn parse_iri_ref(&mut self) -> Result<Term, String> {
        if !self.eat('<') {
            return Err("expected '<'".into());
        }
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) => iri.push(c),
                None => return Err("unterminated IRI".into()),
            }
        }
        Term::iri(iri).map_err(|e| e.to_string())
    }

    fn parse_literal(&mut self) -> Result<Term, String> {
        if !self.eat('"') {
            return Err("expected '\"'".into());
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('\\') => lexical.push('\\'),
                    Some('"') => lexical.push('"'),
                    Some('n') => lexical.push('\n'),
                    Some('r') => lexical.push('\r'),
                    Some('t') => lexical.push('\t'),
                    Some(c) => return Err(format!("unknown escape \\{c}")),
                    None => return Err("unterminated escape".into()),
                },
                Some(c) => lexical.push(c),
                None => return Err("unterminated literal".into()),
            }
        }
        if self.rest.starts_with("^^") {
            self.bump();
            self.bump();
            let dt = self.parse_iri_ref()?;
            let dt = dt.as_iri().expect("iri ref").to_string();
            return Term::typed_literal(lexical, dt).map_err(|e| e.to_string());
        }
        if self.eat('@') {
            let mut tag = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    tag.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            return Term::lang_literal(lexical, tag).map_err(|e| e.to_string());
        }
        Ok(Term::literal(lexical))
    }
}

pub(crate) fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(v: &str) -> Term {
        Term::iri(v).unwrap()
    }

    #[test]
    fn parses_simple_iri_triple() {
        let parsed = parse("<http://a> <http://p> <http://b> .").unwrap();
        assert_eq!(
            parsed,
            vec![Triple::new(iri("http://a"), iri("http://p"), iri("http://b")).unwrap()]
        );
    }

    #[test]
    fn empty_input_yields_nothing() {
        assert_eq!(parse("").unwrap(), vec![]);
        assert_eq!(parse("\n# comment\n\n").unwrap(), vec![]);
    }

    #[test]
    fn parses_typed_literal() {
        let parsed =
            parse("<http://a> <http://p> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .")
                .unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(
            parsed[0].object,
            Term::typed_literal("5", "http://www.w3.org/2001/XMLSchema#integer").unwrap()
        );
    }

    #[test]
    fn parses_language_tagged_literal() {
        let parsed = parse("<http://a> <http://p> \"hoi\"@nl-BE .").unwrap();
        assert_eq!(parsed[0].object, Term::lang_literal("hoi", "nl-BE").unwrap());
    }

    #[test]
    fn error_carries_line_number_and_text() {
        let err = parse("<http://a> <http://p> <http://b> .\n<http://a <p> .").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.text.contains("<http://a <p>"));
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse("<http://a> <http://p> <http://b> . extra").is_err());
    }

    #[test]
    fn serialize_empty_is_empty() {
        assert_eq!(serialize(&[]), "");
    }

    #[test]
    fn serialize_single_triple() {
        let t = Triple::new(iri("http://a"), iri("http://p"), iri("http://b")).unwrap();
        assert_eq!(serialize(&[t]), "<http://a> <http://p> <http://b> .\n");
    }

    #[test]
    fn round_trips_a_small_document() {
        let triples = vec![
            Triple::new(iri("http://a"), iri("http://p"), iri("http://b")).unwrap(),
            Triple::new(
                iri("http://a"),
                iri("http://q"),
                Term::literal("line\nbreak \"quoted\" \\slash"),
            )
            .unwrap(),
            Triple::new(
                iri("http://b"),
                iri("http://p"),
                Term::lang_literal("hallo", "nl").unwrap(),
            )
            .unwrap(),
        ];
        let text = serialize(&triples);
        assert_eq!(parse(&text).unwrap(), triples);
    }
}
