//! Plain-text edge lists.
//!
//! ```text
//! HG <r> <n> <m>
//! PARTS <k> <n_1> ... <n_k>     (optional)
//! <v_1> ... <v_r>               (m lines, ids strictly increasing)
//! ```
//!
//! The writer emits edges in lexicographic order. The reader accepts any line order but
//! rejects duplicates, and ignores blank lines.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use hyperturan_core::Hypergraph;

use crate::error::CliError;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: malformed header, expected `HG r n m`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed PARTS line")]
    MalformedParts { line: usize },
    #[error("line {line}: an edge needs {r} strictly increasing ids")]
    MalformedEdge { line: usize, r: usize },
    #[error("line {line}: vertex id {id} out of range for n = {n}")]
    IdOutOfRange { line: usize, id: u64, n: u32 },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: u64, found: u64 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn numbers<'a>(tokens: impl Iterator<Item = &'a str>) -> Option<Vec<u64>> {
    tokens.map(|t| t.parse().ok()).collect()
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<Hypergraph, FormatError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next_line = || -> Result<Option<(usize, String)>, FormatError> {
        for (no, line) in lines.by_ref() {
            let line = line?;
            if !line.trim().is_empty() {
                return Ok(Some((no, line)));
            }
        }
        Ok(None)
    };

    let (no, header) = next_line()?.ok_or(FormatError::MalformedHeader { line: 1 })?;
    let mut tokens = header.split_whitespace();
    let fields = match tokens.next() {
        Some("HG") => numbers(tokens),
        _ => None,
    };
    let (r, n, m) = match fields.as_deref() {
        Some(&[r, n, m]) if r >= 1 && n <= u32::MAX as u64 => (r as usize, n as u32, m),
        _ => return Err(FormatError::MalformedHeader { line: no }),
    };

    let mut parts = None;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut first = true;
    while let Some((no, line)) = next_line()? {
        let mut tokens = line.split_whitespace();
        if first && line.trim_start().starts_with("PARTS") {
            tokens.next();
            let sizes = numbers(tokens).ok_or(FormatError::MalformedParts { line: no })?;
            match sizes.split_first() {
                Some((&k, rest))
                    if k as usize == rest.len() && rest.iter().sum::<u64>() == n as u64 =>
                {
                    parts = Some(rest.iter().map(|&s| s as u32).collect::<Vec<u32>>());
                }
                _ => return Err(FormatError::MalformedParts { line: no }),
            }
            first = false;
            continue;
        }
        first = false;
        let ids = numbers(tokens).ok_or(FormatError::MalformedEdge { line: no, r })?;
        if ids.len() != r || ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FormatError::MalformedEdge { line: no, r });
        }
        if let Some(&id) = ids.iter().find(|&&v| v >= n as u64) {
            return Err(FormatError::IdOutOfRange { line: no, id, n });
        }
        let edge: Vec<u32> = ids.into_iter().map(|v| v as u32).collect();
        if !seen.insert(edge.clone()) {
            return Err(FormatError::DuplicateEdge { line: no });
        }
        edges.push(edge);
    }
    if edges.len() as u64 != m {
        return Err(FormatError::EdgeCountMismatch { declared: m, found: edges.len() as u64 });
    }
    let g = Hypergraph::from_edges(n, r, &edges).expect("edges were validated while reading");
    Ok(match parts {
        Some(sizes) => g.with_parts(sizes).expect("part sizes were validated while reading"),
        None => g,
    })
}

pub fn write_graph<W: Write>(g: &Hypergraph, mut w: W) -> io::Result<()> {
    writeln!(w, "HG {} {} {}", g.r(), g.n(), g.edge_count())?;
    if let Some(parts) = g.parts() {
        write!(w, "PARTS {}", parts.len())?;
        for p in parts {
            write!(w, " {p}")?;
        }
        writeln!(w)?;
    }
    let mut line = String::new();
    for e in g.edges() {
        line.clear();
        for (i, v) in e.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&v.to_string());
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()
}

pub fn read_graph_path(path: &Path) -> Result<Hypergraph, CliError> {
    let file = File::open(path).map_err(|e| CliError::File { path: path.into(), source: e.into() })?;
    read_graph(BufReader::new(file)).map_err(|source| CliError::File { path: path.into(), source })
}

pub fn write_graph_path(g: &Hypergraph, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::File { path: path.into(), source: e.into() })?;
    write_graph(g, BufWriter::new(file)).map_err(|e| CliError::File { path: path.into(), source: e.into() })
}
