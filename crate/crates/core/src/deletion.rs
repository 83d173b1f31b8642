//! The random-deletion baseline and the `r`-density of small patterns.
//!
//! For a pattern with `v` vertices and `e` edges, `G^{(r)}(n, p)` with
//! `p = n^{-(v-r)/(e-1)} / 2` has few copies compared with edges; deleting one edge per copy
//! leaves a pattern-free graph with order `n^{(er-v)/(e-1)}` edges.

use core::ops::ControlFlow;

use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use crate::combin::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;
use crate::verifier::{find_violation, for_each_copy, PatternSpec};

/// Largest graph [`r_density`] enumerates subsets of.
pub const DENSITY_VERTEX_LIMIT: u32 = 18;
/// Largest number of candidate edges [`random_hypergraph`] flips coins for.
pub const RANDOM_EDGE_LIMIT: u128 = 100_000_000;
/// Largest pattern [`deletion_construct`] handles.
pub const PATTERN_VERTEX_LIMIT: u64 = 12;

/// `(e r - v) / (e - 1)`, which equals `r - (v - r)/(e - 1)`.
pub fn alpha_exponent(r: u64, v: u64, e: u64) -> Result<Ratio<i64>> {
    if e < 2 {
        return Err(Error::DegenerateTarget);
    }
    if v <= r {
        return Err(Error::InvalidParameter("pattern needs more than r vertices"));
    }
    Ok(Ratio::new((e * r) as i64 - v as i64, e as i64 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityProfile {
    /// `max (|E'| - 1) / (|V'| - r)` over induced subgraphs on at least `r + 1` vertices.
    pub m_r: Ratio<i64>,
    /// Vertex sets attaining the maximum, each ascending, in ascending order.
    pub argmax: Vec<Vec<u32>>,
}

pub fn r_density(h: &Hypergraph) -> Result<DensityProfile> {
    let n = h.n();
    let r = h.r() as u32;
    if n > DENSITY_VERTEX_LIMIT {
        return Err(Error::TooLarge { what: "vertices", size: n as u128, limit: DENSITY_VERTEX_LIMIT as u128 });
    }
    if n < r + 1 {
        return Err(Error::InvalidParameter("r-density needs at least r + 1 vertices"));
    }
    let masks: Vec<u32> = h.edges().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut best: Option<Ratio<i64>> = None;
    let mut argmax: Vec<u32> = Vec::new();
    for set in 0u32..1 << n {
        let size = set.count_ones();
        if size < r + 1 {
            continue;
        }
        let edges = masks.iter().filter(|&&m| m & set == m).count() as i64;
        let d = Ratio::new(edges - 1, (size - r) as i64);
        match best {
            Some(b) if d < b => {}
            Some(b) if d == b => argmax.push(set),
            _ => {
                best = Some(d);
                argmax.clear();
                argmax.push(set);
            }
        }
    }
    let mut argmax: Vec<Vec<u32>> =
        argmax.into_iter().map(|s| (0..n).filter(|&v| s >> v & 1 == 1).collect()).collect();
    argmax.sort_unstable();
    Ok(DensityProfile { m_r: best.expect("at least one subset qualifies"), argmax })
}

/// True iff the whole vertex set is the only maximiser of the `r`-density.
pub fn strictly_balanced(h: &Hypergraph) -> Result<bool> {
    let profile = r_density(h)?;
    Ok(profile.argmax.len() == 1 && profile.argmax[0].len() == h.n() as usize)
}

/// Each `r`-subset of `0..n` becomes an edge independently with probability `p`.
pub fn random_hypergraph(n: u32, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("probability must lie in [0, 1]"));
    }
    let candidates = binomial(n as u64, r as u64);
    if candidates > RANDOM_EDGE_LIMIT {
        return Err(Error::TooLarge { what: "candidate edges", size: candidates, limit: RANDOM_EDGE_LIMIT });
    }
    let mut rng = rng::seeded(seed);
    let mut flat = Vec::new();
    let _ = for_each_combination(n as usize, r, |e| {
        if rng.random::<f64>() < p {
            flat.extend_from_slice(e);
        }
        ControlFlow::Continue(())
    });
    Ok(Hypergraph::from_sorted_flat(n, r, flat))
}

/// `n^{-(v-r)/(e-1)} / 2`.
pub fn deletion_probability(n: u32, r: u64, v: u64, e: u64) -> Result<f64> {
    alpha_exponent(r, v, e)?;
    let exponent = (v - r) as f64 / (e - 1) as f64;
    Ok(0.5 * libm::pow(n as f64, -exponent))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeletionReport {
    pub n: u32,
    pub r: usize,
    pub p: f64,
    pub alpha: Ratio<i64>,
    pub sampled_edges: usize,
    pub deleted_edges: usize,
    pub surviving_edges: usize,
    /// Enumerate-and-delete passes, including the final one that found nothing.
    pub rounds: u32,
}

/// Samples `G(n, p)` and deletes the smallest edge of every surviving copy of the pattern,
/// repeating until the verifier finds no copy.
pub fn deletion_construct(n: u32, r: usize, pattern: &PatternSpec, seed: u64) -> Result<(Hypergraph, DeletionReport)> {
    if pattern.r() != r {
        return Err(Error::InvalidParameter("pattern uniformity differs from r"));
    }
    let v = pattern.vertex_count();
    let e = pattern.edge_count();
    if v > PATTERN_VERTEX_LIMIT {
        return Err(Error::TooLarge { what: "pattern vertices", size: v as u128, limit: PATTERN_VERTEX_LIMIT as u128 });
    }
    let alpha = alpha_exponent(r as u64, v, e)?;
    let p = deletion_probability(n, r as u64, v, e)?;
    let mut g = random_hypergraph(n, r, p, seed)?;
    let sampled_edges = g.edge_count();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut copies: Vec<Vec<Vec<u32>>> = Vec::new();
        let _ = for_each_copy(&g, pattern, |w| {
            copies.push(w.edges());
            ControlFlow::Continue(())
        })?;
        let mut deleted = 0;
        for mut edges in copies {
            if edges.iter().all(|e| g.contains_sorted(e)) {
                edges.sort_unstable();
                g.remove(&edges[0]);
                deleted += 1;
            }
        }
        if deleted == 0 && find_violation(&g, pattern)?.is_none() {
            break;
        }
    }
    let report = DeletionReport {
        n,
        r,
        p,
        alpha,
        sampled_edges,
        deleted_edges: sampled_edges - g.edge_count(),
        surviving_edges: g.edge_count(),
        rounds,
    };
    Ok((g, report))
}
