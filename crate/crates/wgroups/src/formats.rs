//! Text formats: `.sos` spaces, `.cgp` presentations, and the structure
//! tree encoding.
//!
//! `.sos` (line oriented, `#` starts a comment):
//! ```text
//! sos 1
//! dim 3
//! name my_space
//! char ---
//! char --+
//! ```
//! One `char` line per ordering over symbols `+`/`-`; the first symbol is
//! the sign at −1 and must be `-`. Canonical files list characters in
//! lexicographic order with `-` < `+`.
//!
//! `.cgp`:
//! ```text
//! cgp 1
//! gens 3
//! rel s1^2
//! rel [s1,s2] [s2,s3] [s3,s1]
//! ```
//! Words are space-separated `s<k>` tokens with optional `^2`/`^3`;
//! `[s<i>,s<j>]` abbreviates `s<i>^3 s<j>^3 s<i> s<j>`. Inverses are
//! cubes.
//!
//! Trees: `L`, `E<m>(t)`, `F(t1,t2,…)`.

use std::fmt;

use crate::classify::Tree;
use crate::f2::{F2Vector, MAX_DIM};
use crate::group::{Word, MAX_GENERATORS};
use crate::space::{Character, Space};

/// A parse failure with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// A parsed `.sos` file.
#[derive(Debug)]
pub struct ParsedSos {
    pub space: Space,
    pub name: Option<String>,
}

/// A parsed `.cgp` file, not yet closed into a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCgp {
    pub gens: usize,
    pub relators: Vec<Word>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let without_comment = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if without_comment.trim().is_empty() {
            None
        } else {
            Some((i + 1, raw, without_comment))
        }
    })
}

fn token_col(raw: &str, token: &str, occurrence: usize) -> usize {
    let mut from = 0;
    let mut seen = 0;
    while let Some(p) = raw[from..].find(token) {
        if seen == occurrence {
            return from + p + 1;
        }
        seen += 1;
        from += p + token.len();
    }
    1
}

pub fn parse_sos(text: &str) -> Result<ParsedSos, ParseError> {
    let mut lines = content_lines(text);
    let (line, raw, content) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty file, expected `sos 1`"))?;
    if content.trim() != "sos 1" {
        return Err(ParseError::new(
            line,
            token_col(raw, content.trim(), 0),
            "expected `sos 1`",
        ));
    }
    let (line, raw, content) = lines
        .next()
        .ok_or_else(|| ParseError::new(line + 1, 1, "expected `dim <n>`"))?;
    let mut parts = content.split_whitespace();
    let dim: usize = match (parts.next(), parts.next(), parts.next()) {
        (Some("dim"), Some(v), None) => v.parse().map_err(|_| {
            ParseError::new(line, token_col(raw, v, 0), "dimension is not a number")
        })?,
        _ => return Err(ParseError::new(line, 1, "expected `dim <n>`")),
    };
    if dim == 0 || dim > MAX_DIM {
        return Err(ParseError::new(
            line,
            1,
            format!("dimension must be 1..={MAX_DIM}"),
        ));
    }

    let mut name: Option<String> = None;
    let mut chars: Vec<Character> = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    let mut last_line = line;
    for (line, raw, content) in lines {
        last_line = line;
        let mut parts = content.split_whitespace();
        match parts.next() {
            Some("name") => {
                if !chars.is_empty() || name.is_some() {
                    return Err(ParseError::new(
                        line,
                        1,
                        "`name` must appear once, before the characters",
                    ));
                }
                let rest = content.trim_start().trim_start_matches("name").trim();
                if rest.is_empty() {
                    return Err(ParseError::new(line, 1, "empty name"));
                }
                name = Some(rest.to_string());
            }
            Some("char") => {
                let token = match (parts.next(), parts.next()) {
                    (Some(t), None) => t,
                    _ => return Err(ParseError::new(line, 1, "expected `char <signs>`")),
                };
                let col = token_col(raw, token, 0);
                if token.len() != dim {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("character has {} symbols, expected {}", token.len(), dim),
                    ));
                }
                let mut v = F2Vector::zero(dim);
                for (i, c) in token.chars().enumerate() {
                    match c {
                        '-' => v.set_bit(i, true),
                        '+' => {}
                        _ => {
                            return Err(ParseError::new(
                                line,
                                col + i,
                                format!("invalid sign `{c}`, expected `+` or `-`"),
                            ))
                        }
                    }
                }
                if !v.bit(0) {
                    return Err(ParseError::new(
                        line,
                        col,
                        "orderings must be negative at -1 (first symbol `-`)",
                    ));
                }
                if seen.contains(&token.to_string()) {
                    return Err(ParseError::new(line, col, "duplicate character"));
                }
                seen.push(token.to_string());
                chars.push(Character(v));
            }
            Some(other) => {
                return Err(ParseError::new(
                    line,
                    token_col(raw, other, 0),
                    format!("unknown directive `{other}`"),
                ))
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    if chars.is_empty() {
        return Err(ParseError::new(
            last_line,
            1,
            "at least one `char` line required",
        ));
    }
    let space = Space::new(dim, F2Vector::unit(dim, 0), chars)
        .map_err(|e| ParseError::new(last_line, 1, e.to_string()))?;
    Ok(ParsedSos { space, name })
}

/// Canonical rendering; rebases first when −1 is not the leading basis
/// vector.
pub fn write_sos(space: &Space, name: Option<&str>) -> String {
    let canonical;
    let space = if space.is_canonical() {
        space
    } else {
        canonical = space.normalize().0;
        &canonical
    };
    let mut out = String::new();
    out.push_str("sos 1\n");
    out.push_str(&format!("dim {}\n", space.dim()));
    if let Some(n) = name {
        out.push_str(&format!("name {n}\n"));
    }
    for c in space.chars() {
        out.push_str(&format!("char {}\n", c.vec().sign_string()));
    }
    out
}

pub fn parse_cgp(text: &str) -> Result<ParsedCgp, ParseError> {
    let mut lines = content_lines(text);
    let (line, raw, content) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty file, expected `cgp 1`"))?;
    if content.trim() != "cgp 1" {
        return Err(ParseError::new(
            line,
            token_col(raw, content.trim(), 0),
            "expected `cgp 1`",
        ));
    }
    let (line, raw, content) = lines
        .next()
        .ok_or_else(|| ParseError::new(line + 1, 1, "expected `gens <n>`"))?;
    let mut parts = content.split_whitespace();
    let gens: usize = match (parts.next(), parts.next(), parts.next()) {
        (Some("gens"), Some(v), None) => v.parse().map_err(|_| {
            ParseError::new(
                line,
                token_col(raw, v, 0),
                "generator count is not a number",
            )
        })?,
        _ => return Err(ParseError::new(line, 1, "expected `gens <n>`")),
    };
    if gens == 0 || gens > MAX_GENERATORS {
        return Err(ParseError::new(
            line,
            1,
            format!("generator count must be 1..={MAX_GENERATORS}"),
        ));
    }
    let mut relators: Vec<Word> = Vec::new();
    for (line, raw, content) in lines {
        let trimmed = content.trim_start();
        let Some(rest) = trimmed.strip_prefix("rel") else {
            let tok = content.split_whitespace().next().unwrap_or("");
            return Err(ParseError::new(
                line,
                token_col(raw, tok, 0),
                format!("unknown directive `{tok}`"),
            ));
        };
        if !rest.starts_with(char::is_whitespace) {
            return Err(ParseError::new(line, 1, "expected `rel <word>`"));
        }
        let mut word: Word = Vec::new();
        let mut occurrence: std::collections::HashMap<&str, usize> = Default::default();
        for token in rest.split_whitespace() {
            let occ = occurrence.entry(token).or_insert(0);
            let col = token_col(raw, token, *occ);
            *occ += 1;
            if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                let (a, b) = inner.split_once(',').ok_or_else(|| {
                    ParseError::new(line, col, "brackets must contain `s<i>,s<j>`")
                })?;
                let i = parse_generator(a, gens, line, col)?;
                let j = parse_generator(b, gens, line, col)?;
                // [x,y] = x³ y³ x y in an exponent-4 group.
                word.extend_from_slice(&[(i, 3), (j, 3), (i, 1), (j, 1)]);
            } else {
                let (gen_part, exp) = match token.split_once('^') {
                    None => (token, 1u32),
                    Some((g, e)) => {
                        let exp: u32 = e
                            .parse()
                            .map_err(|_| ParseError::new(line, col, "exponent is not a number"))?;
                        if !(2..=3).contains(&exp) {
                            return Err(ParseError::new(
                                line,
                                col,
                                "explicit exponents must be 2 or 3",
                            ));
                        }
                        (g, exp)
                    }
                };
                let g = parse_generator(gen_part, gens, line, col)?;
                word.push((g, exp));
            }
        }
        if word.is_empty() {
            return Err(ParseError::new(line, 1, "empty relator"));
        }
        relators.push(word);
    }
    Ok(ParsedCgp { gens, relators })
}

fn parse_generator(token: &str, gens: usize, line: usize, col: usize) -> Result<usize, ParseError> {
    let k: usize = token
        .strip_prefix('s')
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| {
            ParseError::new(
                line,
                col,
                format!("expected generator token `s<k>`, got `{token}`"),
            )
        })?;
    if k == 0 || k > gens {
        return Err(ParseError::new(
            line,
            col,
            format!("generator s{k} out of range (gens {gens})"),
        ));
    }
    Ok(k - 1)
}

pub fn write_cgp(gens: usize, relators: &[Word]) -> String {
    let mut out = String::new();
    out.push_str("cgp 1\n");
    out.push_str(&format!("gens {gens}\n"));
    for w in relators {
        let tokens: Vec<String> = w
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("s{}", g + 1)
                } else {
                    format!("s{}^{}", g + 1, e)
                }
            })
            .collect();
        out.push_str(&format!("rel {}\n", tokens.join(" ")));
    }
    out
}

pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let s = text.trim();
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let tree = parse_tree_inner(s, bytes, &mut pos)?;
    if pos != bytes.len() {
        return Err(ParseError::new(1, pos + 1, "trailing input after tree"));
    }
    Ok(tree)
}

fn parse_tree_inner(s: &str, bytes: &[u8], pos: &mut usize) -> Result<Tree, ParseError> {
    let err = |p: usize, m: &str| ParseError::new(1, p + 1, m.to_string());
    match bytes.get(*pos) {
        Some(b'L') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'E') => {
            *pos += 1;
            let start = *pos;
            while bytes.get(*pos).is_some_and(|b| b.is_ascii_digit()) {
                *pos += 1;
            }
            let m: u64 = s[start..*pos]
                .parse()
                .map_err(|_| err(start, "expected extension dimension"))?;
            if m == 0 || m > 64 {
                return Err(err(start, "extension dimension must be 1..=64"));
            }
            expect(bytes, pos, b'(')?;
            let child = parse_tree_inner(s, bytes, pos)?;
            expect(bytes, pos, b')')?;
            if matches!(child, Tree::Ext { .. }) {
                return Err(err(start, "extension nodes cannot nest"));
            }
            Ok(Tree::ext(m as u32, child))
        }
        Some(b'F') => {
            *pos += 1;
            expect(bytes, pos, b'(')?;
            let mut children = vec![parse_tree_inner(s, bytes, pos)?];
            while bytes.get(*pos) == Some(&b',') {
                *pos += 1;
                children.push(parse_tree_inner(s, bytes, pos)?);
            }
            expect(bytes, pos, b')')?;
            if children.len() < 2 {
                return Err(err(*pos, "free nodes need at least two children"));
            }
            if children.iter().any(|c| matches!(c, Tree::Free { .. })) {
                return Err(err(*pos, "free nodes must be flattened"));
            }
            Ok(Tree::free(children))
        }
        Some(c) => Err(err(*pos, &format!("unexpected `{}`", *c as char))),
        None => Err(err(*pos, "unexpected end of tree")),
    }
}

fn expect(bytes: &[u8], pos: &mut usize, want: u8) -> Result<(), ParseError> {
    if bytes.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(ParseError::new(
            1,
            *pos + 1,
            format!("expected `{}`", want as char),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAP2: &str = "sos 1\ndim 2\nchar --\nchar -+\n";

    #[test]
    fn sos_round_trips_canonical_files() {
        let parsed = parse_sos(SAP2).unwrap();
        assert_eq!(write_sos(&parsed.space, None), SAP2);
        let named = "sos 1\ndim 2\nname two orderings\nchar --\nchar -+\n";
        let parsed = parse_sos(named).unwrap();
        assert_eq!(write_sos(&parsed.space, parsed.name.as_deref()), named);
    }

    #[test]
    fn sos_writer_canonicalizes_order() {
        let shuffled = "sos 1\ndim 2\n# a comment\nchar -+\nchar --\n";
        let parsed = parse_sos(shuffled).unwrap();
        assert_eq!(write_sos(&parsed.space, None), SAP2);
        let twice = parse_sos(&write_sos(&parsed.space, None)).unwrap();
        assert_eq!(write_sos(&twice.space, None), SAP2);
    }

    #[test]
    fn sos_errors_carry_positions() {
        let bad = "sos 1\ndim 2\nchar -x\n";
        let e = parse_sos(bad).unwrap_err();
        assert_eq!((e.line, e.col), (3, 7));
        let dup = "sos 1\ndim 2\nchar --\nchar --\n";
        let e = parse_sos(dup).unwrap_err();
        assert_eq!(e.line, 4);
        let plus = "sos 1\ndim 2\nchar +-\n";
        let e = parse_sos(plus).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn cgp_parses_words_and_brackets() {
        let text = "cgp 1\ngens 3\nrel s1^2\nrel s2^2\nrel s3^2\nrel [s1,s2] [s2,s3] [s3,s1]\n";
        let parsed = parse_cgp(text).unwrap();
        assert_eq!(parsed.gens, 3);
        assert_eq!(parsed.relators[0], vec![(0, 2)]);
        assert_eq!(parsed.relators[3].len(), 12);
        let p = crate::group::Presentation::new(parsed.gens, parsed.relators).unwrap();
        assert_eq!(p.quotient_log2_order(), 5);
    }

    #[test]
    fn cgp_rejects_bad_tokens() {
        assert_eq!(parse_cgp("cgp 1\ngens 2\nrel s3\n").unwrap_err().line, 3);
        assert_eq!(parse_cgp("cgp 1\ngens 2\nrel s1^4\n").unwrap_err().line, 3);
        assert!(parse_cgp("cgp 1\ngens 0\n").is_err());
        let e = parse_cgp("cgp 1\ngens 2\nrel s1 q2\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 8));
    }

    #[test]
    fn cgp_round_trips() {
        let text = "cgp 1\ngens 2\nrel s1^2\nrel s1 s2 s1 s2\n";
        let parsed = parse_cgp(text).unwrap();
        assert_eq!(write_cgp(parsed.gens, &parsed.relators), text);
    }

    #[test]
    fn trees_round_trip() {
        for enc in [
            "L",
            "E2(L)",
            "F(E2(L),E2(L))",
            "F(E3(L),L,L)",
            "E1(F(L,L,L))",
        ] {
            let t = parse_tree(enc).unwrap();
            assert_eq!(t.encode(), enc);
        }
        // Children are sorted on construction.
        assert_eq!(parse_tree("F(E2(L),L)").unwrap().encode(), "F(E2(L),L)");
        assert_eq!(parse_tree("F(L,E2(L))").unwrap().encode(), "F(E2(L),L)");
    }

    #[test]
    fn tree_parser_rejects_malformed_input() {
        assert!(parse_tree("E0(L)").is_err());
        assert!(parse_tree("F(L)").is_err());
        assert!(parse_tree("E2(E2(L))").is_err());
        assert!(parse_tree("F(F(L,L),L)").is_err());
        assert!(parse_tree("L extra").is_err());
        assert!(parse_tree("").is_err());
    }
}
