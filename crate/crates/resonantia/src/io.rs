//! Reading and writing fullerene graphs.
//!
//! Two formats:
//! - planar_code: the binary interchange format used by planar-graph
//!   generators. ASCII header ">>planar_code<<", then per graph one byte n
//!   followed by each vertex's clockwise neighbor list as 1-based bytes
//!   terminated by a 0 byte.
//! - adjacency text: one line per vertex, "v: a b c" with 0-based indices
//!   in clockwise order; graphs separated by blank lines; '#' starts a
//!   comment line.

use crate::graph::{FullereneGraph, GraphError, MAX_VERTICES};
use std::io::{Read, Write};
use std::path::Path;
use thiserror::Error;

pub const PLANAR_CODE_HEADER: &[u8; 15] = b">>planar_code<<";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing or malformed planar_code header")]
    BadHeader,
    #[error("input ends in the middle of graph {graph}")]
    Truncated { graph: usize },
    #[error("graph {graph} declares {n} vertices, outside the supported 1..={max}")]
    BadVertexCount { graph: usize, n: usize, max: usize },
    #[error("graph {graph}: neighbor byte {byte} out of range for {n} vertices")]
    BadNeighborByte { graph: usize, byte: u8, n: usize },
    #[error("graph {graph} is not a valid fullerene graph: {source}")]
    Graph {
        graph: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
}

/// Writes graphs in planar_code, preserving each rotation system exactly.
pub fn write_planar_code<'a, W, I>(mut w: W, graphs: I) -> Result<(), IoError>
where
    W: Write,
    I: IntoIterator<Item = &'a FullereneGraph>,
{
    w.write_all(PLANAR_CODE_HEADER)?;
    for g in graphs {
        let mut buf = Vec::with_capacity(1 + 4 * g.n());
        buf.push(g.n() as u8);
        for v in 0..g.n() {
            for &u in &g.neighbors(v) {
                buf.push((u + 1) as u8);
            }
            buf.push(0);
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_planar_code<R: Read>(mut r: R) -> Result<Vec<FullereneGraph>, IoError> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    parse_planar_code(&data)
}

pub fn parse_planar_code(data: &[u8]) -> Result<Vec<FullereneGraph>, IoError> {
    if data.len() < PLANAR_CODE_HEADER.len() || &data[..PLANAR_CODE_HEADER.len()] != PLANAR_CODE_HEADER
    {
        return Err(IoError::BadHeader);
    }
    let mut pos = PLANAR_CODE_HEADER.len();
    let mut graphs = Vec::new();
    let mut graph_no = 0;
    while pos < data.len() {
        graph_no += 1;
        let n = data[pos] as usize;
        pos += 1;
        if n == 0 || n > MAX_VERTICES {
            return Err(IoError::BadVertexCount {
                graph: graph_no,
                n,
                max: MAX_VERTICES,
            });
        }
        let mut lists: Vec<Vec<usize>> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut nbrs = Vec::with_capacity(3);
            loop {
                let Some(&b) = data.get(pos) else {
                    return Err(IoError::Truncated { graph: graph_no });
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n {
                    return Err(IoError::BadNeighborByte {
                        graph: graph_no,
                        byte: b,
                        n,
                    });
                }
                nbrs.push(b as usize - 1);
            }
            lists.push(nbrs);
        }
        let g = FullereneGraph::from_neighbor_lists(lists).map_err(|source| IoError::Graph {
            graph: graph_no,
            source,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Writes graphs as adjacency text, one "v: a b c" line per vertex and a
/// blank line between graphs.
pub fn write_text<'a, W, I>(mut w: W, graphs: I) -> Result<(), IoError>
where
    W: Write,
    I: IntoIterator<Item = &'a FullereneGraph>,
{
    let mut first = true;
    for g in graphs {
        if !first {
            writeln!(w)?;
        }
        first = false;
        for v in 0..g.n() {
            let [a, b, c] = g.neighbors(v);
            writeln!(w, "{v}: {a} {b} {c}")?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn parse_text(input: &str) -> Result<Vec<FullereneGraph>, IoError> {
    let mut graphs = Vec::new();
    let mut lists: Vec<Vec<usize>> = Vec::new();
    let mut first_graph_line = 0;

    let flush = |lists: &mut Vec<Vec<usize>>,
                 graphs: &mut Vec<FullereneGraph>,
                 line: usize|
     -> Result<(), IoError> {
        if lists.is_empty() {
            return Ok(());
        }
        let g = FullereneGraph::from_neighbor_lists(std::mem::take(lists)).map_err(|e| {
            IoError::Text {
                line,
                msg: format!("graph is not a valid fullerene graph: {e}"),
            }
        })?;
        graphs.push(g);
        Ok(())
    };

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut lists, &mut graphs, first_graph_line)?;
            continue;
        }
        if lists.is_empty() {
            first_graph_line = lineno;
        }
        let (head, rest) = line.split_once(':').ok_or_else(|| IoError::Text {
            line: lineno,
            msg: "expected \"v: a b c\"".into(),
        })?;
        let v: usize = head.trim().parse().map_err(|_| IoError::Text {
            line: lineno,
            msg: format!("bad vertex index {:?}", head.trim()),
        })?;
        if v != lists.len() {
            return Err(IoError::Text {
                line: lineno,
                msg: format!("expected vertex {} next, found {v}", lists.len()),
            });
        }
        let nbrs: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
        let nbrs = nbrs.map_err(|_| IoError::Text {
            line: lineno,
            msg: "bad neighbor list".into(),
        })?;
        lists.push(nbrs);
    }
    flush(&mut lists, &mut graphs, first_graph_line)?;
    Ok(graphs)
}

/// Parses either format, sniffing planar_code by its header bytes.
pub fn parse_auto(data: &[u8]) -> Result<Vec<FullereneGraph>, IoError> {
    if data.starts_with(b">>") {
        parse_planar_code(data)
    } else {
        let s = String::from_utf8_lossy(data);
        parse_text(&s)
    }
}

pub fn read_graphs_from_path(path: &Path) -> Result<Vec<FullereneGraph>, IoError> {
    let data = std::fs::read(path)?;
    parse_auto(&data)
}
