//! Cycle notation and the group/tuple file formats.
//!
//! A cycle body is split on commas when it contains any; otherwise, over a
//! domain of one-character tokens, every non-whitespace character is a token,
//! and over any other domain tokens are separated by whitespace.

use std::sync::Arc;

use thiserror::Error;

use super::{Domain, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("token `{0}` appears more than once")]
    RepeatedToken(String),
    #[error("unbalanced parentheses at byte {0}")]
    Unbalanced(usize),
    #[error("unexpected text `{0}` outside parentheses")]
    StrayText(String),
    #[error("duplicate domain token `{0}`")]
    DuplicateDomainToken(String),
    #[error("missing domain line")]
    MissingDomain,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<NotationError>,
    },
}

impl NotationError {
    fn at(self, line: usize) -> Self {
        NotationError::AtLine { line, source: Box::new(self) }
    }
}

fn split_tokens<'a>(body: &'a str, domain: &Domain) -> Vec<&'a str> {
    if body.contains(',') {
        body.split(',').map(str::trim).collect()
    } else if domain.single_char_tokens() {
        body.char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| &body[i..i + c.len_utf8()])
            .collect()
    } else {
        body.split_whitespace().collect()
    }
}

/// Parses a product of disjoint cycles such as `"(2X)(34)(59)(67)"`.
///
/// The empty string and `"()"` give the identity.
pub fn parse_cycles(text: &str, domain: &Arc<Domain>) -> Result<Permutation, NotationError> {
    let n = domain.len();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut rest = text;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            if rest.starts_with(')') {
                return Err(NotationError::Unbalanced(offset));
            }
            let stray: String = rest.chars().take_while(|&c| c != '(').collect();
            return Err(NotationError::StrayText(stray.trim().to_string()));
        }
        let close = match rest[1..].find([')', '(']) {
            Some(i) if rest.as_bytes()[i + 1] == b')' => i + 1,
            Some(i) => return Err(NotationError::Unbalanced(offset + i + 1)),
            None => return Err(NotationError::Unbalanced(offset)),
        };
        let body = &rest[1..close];
        let points = split_tokens(body, domain)
            .into_iter()
            .filter(|t| !t.is_empty())
            .map(|t| domain.position(t).ok_or_else(|| NotationError::UnknownToken(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        for &p in &points {
            if std::mem::replace(&mut used[p], true) {
                return Err(NotationError::RepeatedToken(domain.token(p).to_string()));
            }
        }
        for (k, &p) in points.iter().enumerate() {
            images[p] = points[(k + 1) % points.len()];
        }
        offset += close + 1;
        rest = &rest[close + 1..];
    }
    Ok(Permutation::from_images(images).expect("disjoint cycles form a bijection").with_domain(domain.clone()))
}

/// Contents of a group file: a domain line followed by one generator per line.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub domain: Arc<Domain>,
    pub generators: Vec<Permutation>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a group file. Blank lines and `#` comments are skipped.
pub fn parse_group_file(text: &str) -> Result<GroupFile, NotationError> {
    let mut lines = content_lines(text);
    let (first, domain_line) = lines.next().ok_or(NotationError::MissingDomain)?;
    let domain = Domain::new(domain_line.split_whitespace())
        .map_err(|t| NotationError::DuplicateDomainToken(t).at(first))?;
    let domain = Arc::new(domain);
    let generators = lines
        .map(|(no, l)| parse_cycles(l, &domain).map_err(|e| e.at(no)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupFile { domain, generators })
}

/// Parses a tuple file over `domain`: one element per line in cycle notation.
/// A line beginning with `=` holds the right-hand side of a relation
/// `g1 ... g_{n-1} = g_n` and contributes its inverse.
pub fn parse_tuple_file(text: &str, domain: &Arc<Domain>) -> Result<Vec<Permutation>, NotationError> {
    content_lines(text)
        .map(|(no, l)| match l.strip_prefix('=') {
            Some(rhs) => parse_cycles(rhs, domain).map(|p| p.inverse()).map_err(|e| e.at(no)),
            None => parse_cycles(l, domain).map_err(|e| e.at(no)),
        })
        .collect()
}
