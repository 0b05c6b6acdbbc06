//! Plain-text edge lists: one `src dst` pair per line, `#` comments, and an
//! optional `# nodes=N` header that fixes the node count.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use super::graph::{DirectedGraph, Edge};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Id of the first node in the file (0 or 1).
    pub index_base: u8,
    /// Collapse repeated `(src, dst)` pairs, keeping the first occurrence.
    pub dedupe: bool,
    pub allow_self_loops: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            index_base: 0,
            dedupe: true,
            allow_self_loops: true,
        }
    }
}

fn nodes_header(comment: &str) -> Option<&str> {
    comment.trim().strip_prefix("nodes=").map(str::trim)
}

/// Reads an edge list.
///
/// Without a `# nodes=N` header the node count is the largest id plus one.
/// The result is a multigraph only when duplicates survive (`dedupe` off and
/// repeated pairs present).
pub fn load_edge_list<R: BufRead>(reader: R, opts: LoadOptions) -> Result<DirectedGraph> {
    if opts.index_base > 1 {
        return Err(Error::out_of_range("index_base", opts.index_base, "{0, 1}"));
    }
    let base = i64::from(opts.index_base);
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if let Some(value) = nodes_header(comment) {
                let n: usize = value.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad node count {value:?}"),
                })?;
                if let Some((prev, _)) = header {
                    if prev != n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("conflicting node counts {prev} and {n}"),
                        });
                    }
                }
                header = Some((n, line_no));
            }
            continue;
        }
        let mut tokens = text.split_whitespace();
        let mut next_id = || -> Result<usize> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two node ids".into(),
            })?;
            let id: i64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not an integer: {tok:?}"),
            })?;
            let shifted = id - base;
            if shifted < 0 {
                return Err(Error::Range {
                    line: line_no,
                    id,
                    reason: format!("negative after shifting by base {base}"),
                });
            }
            Ok(shifted as usize)
        };
        let src = next_id()?;
        let dst = next_id()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        raw.push((src, dst, line_no));
    }

    let n_nodes = match header {
        Some((n, _)) => {
            if let Some(&(s, d, line)) = raw.iter().find(|(s, d, _)| *s >= n || *d >= n) {
                let id = s.max(d) as i64 + base;
                return Err(Error::Range {
                    line,
                    id,
                    reason: format!("header declares {n} nodes"),
                });
            }
            n
        }
        None => raw.iter().map(|&(s, d, _)| s.max(d) + 1).max().unwrap_or(0),
    };

    let mut seen = HashSet::with_capacity(raw.len());
    let mut has_duplicates = false;
    let mut edges = Vec::with_capacity(raw.len());
    for (src, dst, _) in raw {
        if src == dst && !opts.allow_self_loops {
            continue;
        }
        let e = Edge::new(src, dst);
        if !seen.insert(e) {
            if opts.dedupe {
                continue;
            }
            has_duplicates = true;
        }
        edges.push(e);
    }
    if has_duplicates {
        DirectedGraph::new_multi(n_nodes, edges)
    } else {
        DirectedGraph::new(n_nodes, edges)
    }
}

/// Parses an edge list held in memory.
pub fn parse_edge_list(text: &str, opts: LoadOptions) -> Result<DirectedGraph> {
    load_edge_list(text.as_bytes(), opts)
}

/// Writes the canonical form: a `# nodes=N` header then 0-based `src dst`
/// lines in stored edge order.
pub fn write_edge_list<W: Write>(g: &DirectedGraph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes={}", g.n_nodes())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.src, e.dst)?;
    }
    Ok(())
}
