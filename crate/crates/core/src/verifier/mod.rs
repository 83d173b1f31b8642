//! Pattern detection and counting.
//!
//! [`PatternSpec`] names a pattern; [`find_violation`] and [`count_copies`] dispatch to the
//! specialised searches for `K_{s,t}^{(r)}` and complete 3-partite patterns and fall back to
//! the generic backtracking counter otherwise. Every returned witness has been re-checked
//! edge by edge against the graph.

use core::ops::ControlFlow;

use alloc::vec::Vec;

pub mod bipartite;
pub mod generic;
pub mod multipartite;
pub mod partition;
pub mod shadow;

pub use bipartite::{count_bipartite_copies, find_bipartite_violation, BipartiteWitness};
pub use generic::{count_embeddings, count_pattern_copies, TargetGraph};
pub use multipartite::{find_multipartite_violation, MultipartiteWitness, PartApexTable};
pub use partition::{erdos_kleitman_partition, PartitionOutcome};
pub use shadow::{build_shadow_links, ShadowLinkIndex};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    /// `K_{s,t}^{(r)}`: `t` disjoint `(r-1)`-sets sharing `s` apexes.
    Bipartite { r: usize, s: u32, t: u32 },
    /// Complete `k`-partite `k`-graph; the uniformity is the number of parts.
    Multipartite { sizes: Vec<u32> },
    Explicit(TargetGraph),
}

impl PatternSpec {
    pub fn r(&self) -> usize {
        match self {
            PatternSpec::Bipartite { r, .. } => *r,
            PatternSpec::Multipartite { sizes } => sizes.len(),
            PatternSpec::Explicit(t) => t.r(),
        }
    }

    pub fn vertex_count(&self) -> u64 {
        match self {
            PatternSpec::Bipartite { r, s, t } => *s as u64 + (*r as u64 - 1) * *t as u64,
            PatternSpec::Multipartite { sizes } => sizes.iter().map(|&s| s as u64).sum(),
            PatternSpec::Explicit(t) => t.v() as u64,
        }
    }

    pub fn edge_count(&self) -> u64 {
        match self {
            PatternSpec::Bipartite { s, t, .. } => *s as u64 * *t as u64,
            PatternSpec::Multipartite { sizes } => sizes.iter().map(|&s| s as u64).product(),
            PatternSpec::Explicit(t) => t.e() as u64,
        }
    }

    /// The pattern as a concrete graph on `0..v`.
    pub fn to_target(&self) -> Result<TargetGraph> {
        match self {
            PatternSpec::Bipartite { r, s, t } => TargetGraph::bipartite(*r, *s, *t),
            PatternSpec::Multipartite { sizes } => TargetGraph::multipartite(sizes),
            PatternSpec::Explicit(t) => Ok(t.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Bipartite(BipartiteWitness),
    Multipartite(MultipartiteWitness),
    /// `map[target vertex]` is the graph vertex it lands on.
    Embedding { map: Vec<u32>, edges: Vec<Vec<u32>> },
}

impl Witness {
    /// The pattern's edges as sorted graph edges.
    pub fn edges(&self) -> Vec<Vec<u32>> {
        match self {
            Witness::Bipartite(w) => w.edges(),
            Witness::Multipartite(w) => w.edges(),
            Witness::Embedding { edges, .. } => edges.clone(),
        }
    }

    /// Vertices involved, ascending.
    pub fn vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.edges().into_iter().flatten().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn check_r(g: &Hypergraph, spec: &PatternSpec) -> Result<()> {
    if spec.r() != g.r() {
        return Err(Error::InvalidParameter("pattern uniformity differs from the graph's"));
    }
    Ok(())
}

fn embedding_witness(t: &TargetGraph, map: &[u32]) -> Witness {
    let edges = t
        .graph()
        .edges()
        .map(|e| {
            let mut m: Vec<u32> = e.iter().map(|&x| map[x as usize]).collect();
            m.sort_unstable();
            m
        })
        .collect();
    Witness::Embedding { map: map.to_vec(), edges }
}

/// Visits copies of the pattern. Complete 3-partite patterns with repeated sizes may be
/// visited more than once.
pub fn for_each_copy<F>(g: &Hypergraph, spec: &PatternSpec, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&Witness) -> ControlFlow<()>,
{
    check_r(g, spec)?;
    match spec {
        PatternSpec::Bipartite { s, t, .. } => {
            let idx = ShadowLinkIndex::build(g);
            bipartite::for_each_bipartite_copy(&idx, *s, *t, |w| f(&Witness::Bipartite(w.clone())))
        }
        PatternSpec::Multipartite { sizes } if sizes.len() == 3 => {
            multipartite::for_each_multipartite_copy(g, sizes, |w| f(&Witness::Multipartite(w.clone())))
        }
        _ => {
            let t = spec.to_target()?;
            let idx = ShadowLinkIndex::build(g);
            generic::for_each_pattern_copy(g, &idx, &t, |map| f(&embedding_witness(&t, map)))
        }
    }
}

fn first_embedding(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph) -> Result<Option<Witness>> {
    let mut found = None;
    let _ = generic::for_each_pattern_copy(g, idx, t, |map| {
        if generic::is_embedding(g, t, map) {
            found = Some(embedding_witness(t, map));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(found)
}

/// A copy of the pattern in `g`, if any.
pub fn find_violation(g: &Hypergraph, spec: &PatternSpec) -> Result<Option<Witness>> {
    check_r(g, spec)?;
    match spec {
        PatternSpec::Bipartite { s, t, .. } => {
            let idx = ShadowLinkIndex::build(g);
            Ok(find_bipartite_violation(g, &idx, *s, *t)?.map(Witness::Bipartite))
        }
        PatternSpec::Multipartite { sizes } if sizes.len() == 3 => {
            Ok(find_multipartite_violation(g, sizes)?.map(Witness::Multipartite))
        }
        _ => first_embedding(g, &ShadowLinkIndex::build(g), &spec.to_target()?),
    }
}

/// Number of copies of the pattern in `g`.
pub fn count_copies(g: &Hypergraph, spec: &PatternSpec) -> Result<u128> {
    check_r(g, spec)?;
    let idx = ShadowLinkIndex::build(g);
    match spec {
        PatternSpec::Bipartite { s, t, .. } => count_bipartite_copies(g, &idx, *s, *t),
        _ => count_pattern_copies(g, &idx, &spec.to_target()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn dispatch() {
        let g = Hypergraph::from_edges(7, 3, [[1, 2, 5], [1, 2, 6], [3, 4, 5], [3, 4, 6]]).unwrap();
        let k22 = PatternSpec::Bipartite { r: 3, s: 2, t: 2 };
        assert_eq!(k22.vertex_count(), 6);
        assert_eq!(k22.edge_count(), 4);
        let w = find_violation(&g, &k22).unwrap().unwrap();
        assert_eq!(w.vertices(), [1, 2, 3, 4, 5, 6]);
        assert_eq!(count_copies(&g, &k22).unwrap(), 1);
        let explicit = PatternSpec::Explicit(k22.to_target().unwrap());
        assert_eq!(find_violation(&g, &explicit).unwrap().unwrap().edges().len(), 4);
        assert_eq!(count_copies(&g, &explicit).unwrap(), 1);
        let mp = PatternSpec::Multipartite { sizes: vec![1, 1, 2] };
        assert!(find_violation(&g, &mp).unwrap().is_some());
        assert!(count_copies(&g, &mp).unwrap() > 0);
        assert!(find_violation(&g, &PatternSpec::Bipartite { r: 2, s: 1, t: 1 }).is_err());
    }
}
