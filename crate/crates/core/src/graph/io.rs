//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with `u < v`.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.m() * 12);
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::input("empty edge-list input"))?;
        let (n, m) = parse_pair(header, 1)?;

        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            edges.push(parse_pair(line, lineno)?);
        }
        if edges.len() != m {
            return Err(Error::input(format!(
                "header declares {m} edges but {} were listed",
                edges.len()
            )));
        }
        Graph::from_edges(n, &edges)
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::input(format!("line {lineno}: expected two integers")))?
            .parse::<usize>()
            .map_err(|e| Error::input(format!("line {lineno}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::input(format!("line {lineno}: trailing tokens")));
    }
    Ok((a, b))
}
