//! A small Newick subset: nested parentheses, optional node names,
//! `:length` annotations on every non-root node, and a closing `;`.

use super::MetricTree;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    names: Vec<String>,
    named: Vec<bool>,
    edges: Vec<(usize, usize, Rational)>,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn token(&mut self) -> (usize, &str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| "(),:;".contains(c) || c.is_whitespace())
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn node(&mut self, name: Option<String>) -> usize {
        self.named.push(name.is_some());
        self.names.push(name.unwrap_or_default());
        self.names.len() - 1
    }

    /// Parses one subtree and returns its node together with the length of
    /// the edge above it, if any.
    fn subtree(&mut self) -> Result<(usize, Option<Rational>)> {
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.subtree()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
        }
        let (_, name) = self.token();
        let name = (!name.is_empty()).then(|| name.to_string());
        if children.is_empty() && name.is_none() {
            return Err(self.error("expected a leaf name or '('"));
        }
        let id = self.node(name);
        for (child, length) in children {
            let len = length.ok_or_else(|| self.error("missing branch length"))?;
            self.edges.push((id, child, len));
        }
        let length = if self.peek() == Some(':') {
            self.pos += 1;
            let (start, token) = self.token();
            let value = rational::parse(token).map_err(|_| Error::Parse {
                position: start,
                message: format!("bad branch length {token:?}"),
            })?;
            Some(value)
        } else {
            None
        };
        Ok((id, length))
    }
}

/// Parses a Newick string into a metric tree. Unnamed nodes are given
/// fresh names; zero lengths are accepted only when `allow_zero` is set.
pub fn parse_newick(text: &str, allow_zero: bool) -> Result<MetricTree> {
    let mut p = Parser {
        text,
        pos: 0,
        names: Vec::new(),
        named: Vec::new(),
        edges: Vec::new(),
    };
    p.subtree()?;
    p.expect(';')?;
    if p.peek().is_some() {
        return Err(p.error("trailing input after ';'"));
    }

    let mut used: std::collections::HashSet<String> = std::collections::HashSet::new();
    for (i, name) in p.names.iter().enumerate() {
        if p.named[i] && !used.insert(name.clone()) {
            return Err(Error::DuplicateLabel(name.clone()));
        }
    }
    let mut counter = 0;
    for i in 0..p.names.len() {
        if !p.named[i] {
            let fresh = loop {
                let candidate = format!("_n{counter}");
                counter += 1;
                if !used.contains(&candidate) {
                    break candidate;
                }
            };
            used.insert(fresh.clone());
            p.names[i] = fresh;
        }
    }
    MetricTree::new(p.names, p.edges, allow_zero)
}
