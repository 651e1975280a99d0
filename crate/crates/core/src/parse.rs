//! Line-based text format:
//!
//! ```text
//! # comment
//! vars x y z
//! s1 -> s2 : 0 0 -1
//! ```

use std::collections::HashSet;

use thiserror::Error;

use crate::vass::{is_identifier, Vass, VassError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `vars` declaration")]
    MissingVars,
    #[error("expected identifier, found `{0}`")]
    ExpectedIdentifier(String),
    #[error("unknown relation token `{0}`, expected `->`")]
    UnknownRelation(String),
    #[error("expected `:`, found `{0}`")]
    ExpectedColon(String),
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("duplicate transition")]
    DuplicateTransition,
    #[error("update has {found} entries, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            pos: 0,
            text,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn byte_at(&self, pos: usize) -> usize {
        self.chars.get(pos).map_or(self.text.len(), |c| c.0)
    }

    /// Next maximal run of characters satisfying `pred`, or a single
    /// character if none match. Returns the start column and the slice.
    fn take(&mut self, pred: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && pred(self.chars[self.pos].1) {
            self.pos += 1;
        }
        if self.pos == start && self.pos < self.chars.len() {
            self.pos += 1;
        }
        (start + 1, &self.text[self.byte_at(start)..self.byte_at(self.pos)])
    }

    fn identifier(&mut self) -> Result<(usize, &'a str), ParseError> {
        let (col, tok) = self.take(|c| c.is_ascii_alphanumeric() || c == '_');
        if is_identifier(tok) {
            Ok((col, tok))
        } else {
            let shown = if tok.is_empty() { "end of line" } else { tok };
            Err(self.err(col, ParseErrorKind::ExpectedIdentifier(shown.into())))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.take(|c| !c.is_whitespace())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses the text format into a validated [`Vass`].
pub fn parse_vass(text: &str) -> Result<Vass, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut transitions = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let mut cur = Cursor::new(line, i + 1);
        if cur.at_end() {
            continue;
        }
        let Some(vars) = vars.as_ref() else {
            let (col, kw) = cur.word();
            if kw != "vars" {
                return Err(cur.err(col, ParseErrorKind::MissingVars));
            }
            let mut names = Vec::new();
            while !cur.at_end() {
                let (col, name) = cur.identifier()?;
                if names.iter().any(|n| n == name) {
                    return Err(cur.err(col, ParseErrorKind::DuplicateVariable(name.into())));
                }
                names.push(name.to_string());
            }
            vars = Some(names);
            continue;
        };

        let start_col = cur.column();
        let (_, src) = cur.identifier()?;
        let (col, rel) = cur.take(|c| "-<=>!~".contains(c));
        if rel != "->" {
            return Err(cur.err(col, ParseErrorKind::UnknownRelation(rel.into())));
        }
        let (_, dst) = cur.identifier()?;
        let (col, colon) = cur.word();
        let colon_rest = match colon.strip_prefix(':') {
            Some(rest) => rest,
            None => return Err(cur.err(col, ParseErrorKind::ExpectedColon(colon.into()))),
        };
        let mut update = Vec::new();
        let mut push_int = |col: usize, tok: &str| -> Result<(), ParseError> {
            let value = tok
                .parse::<i64>()
                .map_err(|_| cur_err(i + 1, col, ParseErrorKind::InvalidInteger(tok.into())))?;
            update.push(value);
            Ok(())
        };
        if !colon_rest.is_empty() {
            push_int(col + 1, colon_rest)?;
        }
        while !cur.at_end() {
            let (col, tok) = cur.word();
            push_int(col, tok)?;
        }
        if update.len() != vars.len() {
            return Err(cur.err(
                start_col,
                ParseErrorKind::ArityMismatch {
                    expected: vars.len(),
                    found: update.len(),
                },
            ));
        }
        if !seen.insert((src.to_string(), update.clone(), dst.to_string())) {
            return Err(cur.err(start_col, ParseErrorKind::DuplicateTransition));
        }
        transitions.push((src.to_string(), update, dst.to_string()));
    }
    let vars = vars.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::MissingVars,
    })?;
    Vass::new(vars, transitions).map_err(|e| {
        // every invariant was checked above with positions
        let kind = match e {
            VassError::DuplicateVariable(v) => ParseErrorKind::DuplicateVariable(v),
            VassError::InvalidIdentifier(v) => ParseErrorKind::ExpectedIdentifier(v),
            VassError::ArityMismatch {
                expected, found, ..
            } => ParseErrorKind::ArityMismatch { expected, found },
            VassError::DuplicateTransition { .. } => ParseErrorKind::DuplicateTransition,
        };
        ParseError {
            line: 1,
            column: 1,
            kind,
        }
    })
}

fn cur_err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}
