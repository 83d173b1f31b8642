//! `K_{s,t}^{(r)}`: `t` pairwise disjoint `(r-1)`-sets `X_i` and an `s`-set `Y` disjoint from
//! them, with every `X_i + {y}` an edge.

use core::ops::ControlFlow;

use alloc::vec::Vec;

use super::shadow::ShadowLinkIndex;
use crate::bitset;
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest pattern (in vertices) [`count_bipartite_copies`] accepts.
pub const COUNT_VERTEX_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteWitness {
    pub tuples: Vec<Vec<u32>>,
    pub apexes: Vec<u32>,
}

impl BipartiteWitness {
    pub fn edges(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for tau in &self.tuples {
            for &y in &self.apexes {
                let mut e = tau.clone();
                e.push(y);
                e.sort_unstable();
                out.push(e);
            }
        }
        out
    }

    /// Checks disjointness and every edge against `g`.
    pub fn is_valid_in(&self, g: &Hypergraph) -> bool {
        let mut all: Vec<u32> = self.tuples.iter().flatten().chain(&self.apexes).copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == total
            && self.tuples.iter().all(|tau| tau.len() + 1 == g.r())
            && self.edges().iter().all(|e| g.contains_sorted(e))
    }
}

fn check_st(s: u32, t: u32) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParameter("s and t must be positive"));
    }
    Ok(())
}

/// Visits every copy as a (canonical family, `s`-subset of its common apexes) pair.
pub fn for_each_bipartite_copy<F>(idx: &ShadowLinkIndex, s: u32, t: u32, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&BipartiteWitness) -> ControlFlow<()>,
{
    check_st(s, t)?;
    Ok(idx.for_each_apex_family(t as usize, s as usize, |family, w| {
        let common: Vec<u32> = bitset::ones(w).map(|v| v as u32).collect();
        let tuples: Vec<Vec<u32>> = family.iter().map(|tau| tau.to_vec()).collect();
        crate::combin::for_each_combination_of(&common, s as usize, &mut |ys| {
            f(&BipartiteWitness { tuples: tuples.clone(), apexes: ys.to_vec() })
        })
    }))
}

/// The first copy of `K_{s,t}^{(r)}` in canonical order, re-validated against `g`.
pub fn find_bipartite_violation(
    g: &Hypergraph,
    idx: &ShadowLinkIndex,
    s: u32,
    t: u32,
) -> Result<Option<BipartiteWitness>> {
    let mut found = None;
    let _ = for_each_bipartite_copy(idx, s, t, |w| {
        if w.is_valid_in(g) {
            found = Some(w.clone());
            ControlFlow::Break(())
        } else {
            debug_assert!(false, "shadow index disagrees with the graph");
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Number of copies of `K_{a,b}^{(r)}` counted as (unordered family of `b` disjoint
/// `(r-1)`-sets, `a`-set of common apexes) pairs.
///
/// For `a, b` not both 1 this equals the number of subgraphs isomorphic to the pattern. For
/// `a = b = 1` the pattern is a single edge and each edge is counted once per choice of apex.
pub fn count_bipartite_copies(g: &Hypergraph, idx: &ShadowLinkIndex, a: u32, b: u32) -> Result<u128> {
    check_st(a, b)?;
    let v = a as usize + (g.r() - 1) * b as usize;
    if v > COUNT_VERTEX_LIMIT {
        return Err(Error::TooLarge { what: "pattern vertices", size: v as u128, limit: COUNT_VERTEX_LIMIT as u128 });
    }
    let mut total: u128 = 0;
    let _ = idx.for_each_apex_family(b as usize, a as usize, |_, w| {
        total += binomial(bitset::count_ones(w) as u64, a as u64);
        ControlFlow::Continue(())
    });
    Ok(total)
}
