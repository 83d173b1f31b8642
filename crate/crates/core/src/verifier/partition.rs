//! Balanced random `r`-partitions keeping a guaranteed share of the edges.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::combin::factorial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;

/// Resampling cap; a uniform balanced partition meets the bound with constant probability, so
/// hitting this means something is wrong with the input.
pub const MAX_ATTEMPTS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOutcome {
    /// Transversal edges only, relabeled part-major; `graph.parts()` holds the `r` equal sizes.
    pub graph: Hypergraph,
    /// `original[new id]`.
    pub original: Vec<u32>,
    /// Number of partitions drawn, starting from 1.
    pub attempts: u64,
}

/// Whether `kept * r^r >= r! * total`.
pub fn meets_bound(r: usize, kept: u128, total: u128) -> bool {
    kept * (r as u128).pow(r as u32) >= factorial(r as u64) * total
}

/// Splits the vertices of `g` into `r` equal parts at random, redrawing with successive
/// sub-streams of `seed` until the transversal edges number at least `r!/r^r` of the total.
pub fn erdos_kleitman_partition(g: &Hypergraph, seed: u64) -> Result<PartitionOutcome> {
    let r = g.r();
    let n = g.n() as usize;
    if r < 2 || !n.is_multiple_of(r) {
        return Err(Error::InvalidParameter("vertex count must be a multiple of r"));
    }
    let size = n / r;
    let total = g.edge_count() as u128;
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut part = vec![0usize; n];
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng::stream(seed, attempt);
        order.sort_unstable();
        order.shuffle(&mut rng);
        for (pos, &v) in order.iter().enumerate() {
            part[v as usize] = pos / size;
        }
        let transversal = |e: &[u32]| {
            let mut seen = 0u64;
            e.iter().all(|&v| {
                let bit = 1u64 << part[v as usize];
                let fresh = seen & bit == 0;
                seen |= bit;
                fresh
            })
        };
        let kept = g.edges().filter(|e| transversal(e)).count() as u128;
        if !meets_bound(r, kept, total) {
            continue;
        }
        for chunk in order.chunks_mut(size) {
            chunk.sort_unstable();
        }
        let mut relabel = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        let mut rows: Vec<Vec<u32>> = g
            .edges()
            .filter(|e| transversal(e))
            .map(|e| {
                let mut row: Vec<u32> = e.iter().map(|&v| relabel[v as usize]).collect();
                row.sort_unstable();
                row
            })
            .collect();
        rows.sort_unstable();
        let graph = Hypergraph::from_sorted_flat(n as u32, r, rows.into_iter().flatten().collect())
            .with_parts(vec![size as u32; r])?;
        return Ok(PartitionOutcome { graph, original: order, attempts: attempt + 1 });
    }
    Err(Error::BudgetExceeded { needed: MAX_ATTEMPTS as u128 + 1, budget: MAX_ATTEMPTS as u128 })
}
