//! Line-oriented text formats for hypergraphs and colorings.
//!
//! Hypergraph:
//! ```text
//! # comment
//! n 4
//! e 1 2 3
//! e 2 4
//! ```
//! Coloring:
//! ```text
//! c 3
//! 1 1
//! 2 3
//! ```
//! `#` starts a comment anywhere on a line; blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, Hypergraph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found `{tok}`"),
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n <count>` header"))?;
    if header.len() != 2 || header[0] != "n" {
        return Err(parse_err(line, "expected `n <count>`"));
    }
    let n: usize = parse_num(header[1], line)?;
    if n == 0 {
        return Err(parse_err(line, "vertex count must be positive"));
    }
    let mut edges = Vec::new();
    for (line, tokens) in lines {
        if tokens[0] != "e" {
            return Err(parse_err(
                line,
                format!("expected `e <v1> <v2> ...`, found `{}`", tokens[0]),
            ));
        }
        if tokens.len() == 1 {
            return Err(parse_err(line, "edge has no vertices"));
        }
        let edge = tokens[1..]
            .iter()
            .map(|t| parse_num::<u32>(t, line))
            .collect::<Result<Vec<_>>>()?;
        if edge.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(line, "edge vertices must be strictly ascending"));
        }
        if let Some(&v) = edge.iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(parse_err(line, format!("vertex {v} outside [{n}]")));
        }
        edges.push(edge);
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("n {}\n", h.n());
    for edge in h.edges() {
        out.push('e');
        for v in edge {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// Parses a coloring; every vertex `1..=k` must appear exactly once.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `c <count>` header"))?;
    if header.len() != 2 || header[0] != "c" {
        return Err(parse_err(line, "expected `c <count>`"));
    }
    let c: u32 = parse_num(header[1], line)?;
    let mut assignment: Vec<Option<u32>> = Vec::new();
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected `<vertex> <color>`"));
        }
        let v: usize = parse_num(tokens[0], line)?;
        let color: u32 = parse_num(tokens[1], line)?;
        if v == 0 {
            return Err(parse_err(line, "vertices are 1-based"));
        }
        if color == 0 || color > c {
            return Err(parse_err(line, format!("color {color} outside [{c}]")));
        }
        if assignment.len() < v {
            assignment.resize(v, None);
        }
        if assignment[v - 1].replace(color).is_some() {
            return Err(parse_err(line, format!("vertex {v} colored twice")));
        }
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| parse_err(0, format!("vertex {} has no color", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(c, assignment)
}

pub fn write_coloring(chi: &Coloring) -> String {
    let mut out = format!("c {}\n", chi.colors());
    for (i, color) in chi.assignment().iter().enumerate() {
        let _ = writeln!(out, "{} {color}", i + 1);
    }
    out
}
