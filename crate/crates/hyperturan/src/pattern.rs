//! `bipartite:s,t`, `multipartite:a,b,c` or `file:<graph file>`.

use std::path::Path;

use hyperturan_core::{PatternSpec, TargetGraph};

use crate::error::CliError;
use crate::graph_file::read_graph_path;

pub fn parse_list(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| CliError::usage(format!("`{t}` is not a count"))))
        .collect()
}

/// `r` is the uniformity for bipartite patterns; multipartite ones take it from their part count.
pub fn parse_pattern(text: &str, r: usize) -> Result<PatternSpec, CliError> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("pattern `{text}` needs a `kind:` prefix")))?;
    match kind {
        "bipartite" => match parse_list(rest)?[..] {
            [s, t] if s > 0 && t > 0 => Ok(PatternSpec::Bipartite { r, s, t }),
            _ => Err(CliError::usage("bipartite pattern needs two positive sizes `s,t`")),
        },
        "multipartite" => {
            let sizes = parse_list(rest)?;
            if sizes.len() < 2 || sizes.contains(&0) {
                return Err(CliError::usage("multipartite pattern needs at least two positive sizes"));
            }
            Ok(PatternSpec::Multipartite { sizes })
        }
        "file" => {
            let g = read_graph_path(Path::new(rest))?;
            Ok(PatternSpec::Explicit(TargetGraph::new(g)?))
        }
        _ => Err(CliError::usage(format!("unknown pattern kind `{kind}`"))),
    }
}
