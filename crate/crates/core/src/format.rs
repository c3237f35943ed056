// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The `.hg` text format.
//!
//! ```text
//! # Fano plane
//! 7 7
//! 0 1 3
//! 1 2 4
//! ...
//! ```
//!
//! The first non-blank line holds `n m`; each of the next `m` non-blank lines
//! lists the vertices of one edge. Anything after `#` is a comment. Line
//! numbers in errors are 1-based and count every physical line.

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, ListAssignment};

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut content = content_lines(text);
    let last_line = text.lines().count();
    let (header_line, header) = content.next().ok_or(Error::Parse {
        line: last_line.max(1),
        message: "missing header `n m`".into(),
    })?;
    let fields = parse_numbers(header_line, header)?;
    let [n, m] = fields[..] else {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header must hold exactly two integers `n m`, found {}", fields.len()),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for id in 0..m {
        let (line, body) = content.next().ok_or_else(|| Error::Parse {
            line: last_line + 1,
            message: format!("expected {m} edge lines, found {id}"),
        })?;
        let vs = parse_numbers(line, body)?;
        if vs.is_empty() {
            return Err(Error::Parse { line, message: "empty edge".into() });
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::Parse {
                line,
                message: format!("vertex {v} out of range for n = {n}"),
            });
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse { line, message: "vertex repeated within an edge".into() });
        }
        edges.push(vs);
    }
    if let Some((line, _)) = content.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected content after {m} edges"),
        });
    }
    Hypergraph::new(n, edges)
}

pub fn serialize_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a list sidecar: one line per edge, each a space-separated list of
/// colours. Blank lines and `#` comments are skipped, so an empty list cannot
/// be written; every edge receives at least one colour.
pub fn parse_lists(text: &str, edge_count: usize) -> Result<ListAssignment> {
    let mut lists = Vec::with_capacity(edge_count);
    let mut last = 0;
    for (line, body) in content_lines(text) {
        last = line;
        let colours = parse_numbers(line, body)?;
        let mut out = Vec::with_capacity(colours.len());
        for c in colours {
            out.push(u32::try_from(c).map_err(|_| Error::Parse {
                line,
                message: format!("colour {c} does not fit in 32 bits"),
            })?);
        }
        lists.push(out);
    }
    if lists.len() != edge_count {
        return Err(Error::Parse {
            line: last + 1,
            message: format!("expected {edge_count} list lines, found {}", lists.len()),
        });
    }
    Ok(ListAssignment::new(lists))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_numbers(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let h = parse_hg("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    }

    #[test]
    fn missing_edge_line_reports_next_line() {
        match parse_hg("2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = parse_hg("# header\n\n2 2 # n m\n0 1\n\n1 # singleton\n").unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1]]);
    }

    #[test]
    fn out_of_range_and_garbage() {
        assert!(matches!(parse_hg("2 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hg("2 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hg("2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hg("2 1\n0\n1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_hg("2 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn duplicates_preserved_and_round_trip() {
        let h = parse_hg("3 3\n0 1\n1 0\n2\n").unwrap();
        assert_eq!(h.edge(0), h.edge(1));
        assert_eq!(parse_hg(&serialize_hg(&h)).unwrap(), h);
    }

    #[test]
    fn list_sidecar() {
        let c = parse_lists("0 1 2\n# second\n5\n", 2).unwrap();
        assert_eq!(c.get(1), &[5]);
        assert!(parse_lists("0\n", 2).is_err());
    }
}
