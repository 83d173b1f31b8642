//! Random symmetric polynomials over `F_q` and the hypergraphs of their zero sets.
//!
//! A polynomial in `r` blocks of `t` variables is stored by orbit: each monomial is an
//! `r`-tuple of block monomials (exponent vectors of length `t` with coordinate sum at most
//! `D`), and block permutations act on the tuple. Orbits are indexed by non-decreasing
//! tuples of block-monomial indices, and one coefficient is kept per orbit.
//!
//! The graph lives on `F_q^t` (vertex id = the vector read as a base-`q` number, first
//! coordinate most significant). An `r`-set is an edge iff the polynomial vanishes on it.
//!
//! A bad sequence is a family of `t` disjoint `(r-1)`-sets whose common apex set `W` has at
//! least `c` elements; removing one vertex from each bad sequence leaves none.

use core::ops::ControlFlow;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::combin::{binomial, factorial, next_permutation};
use crate::error::{Error, Result};
use crate::ffield::PrimeField;
use crate::hypergraph::Hypergraph;
use crate::rng;
use crate::verifier::{count_copies, PatternSpec, ShadowLinkIndex};

pub const ORBIT_LIMIT: u128 = 10_000_000;
/// Largest vertex count `q^t` a graph build accepts.
pub const VERTEX_LIMIT: u64 = 512;
/// Largest dense coefficient tensor (`M^r` entries) a graph build allocates.
pub const TENSOR_LIMIT: u128 = 1 << 24;

/// `(r-1) t^2 - t + e + 1`.
pub fn ra_degree_bound(r: u64, t: u64, e: u64) -> u64 {
    (r - 1) * t * t - t + e + 1
}

/// Exponent vectors of length `t` with sum at most `degree`, lexicographically ascending.
pub fn block_monomials(t: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(t: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(t, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, degree, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Number of orbits: multisets of size `r` from `C(D + t, t)` block monomials.
pub fn orbit_count(r: usize, t: usize, degree: u32) -> u128 {
    let m = binomial(degree as u64 + t as u64, t as u64) as u64;
    binomial(m + r as u64 - 1, r as u64)
}

/// Calls `f` on every non-decreasing `r`-tuple over `0..m`, lexicographically.
fn for_each_orbit<F: FnMut(&[u32])>(m: u32, r: usize, mut f: F) {
    if m == 0 {
        return;
    }
    let mut tuple = vec![0u32; r];
    loop {
        f(&tuple);
        let Some(i) = (0..r).rev().find(|&i| tuple[i] + 1 < m) else { return };
        let v = tuple[i] + 1;
        for slot in &mut tuple[i..] {
            *slot = v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    field: PrimeField,
    r: usize,
    t: usize,
    degree: u32,
    monomials: Vec<Vec<u32>>,
    /// Orbit keys (non-decreasing monomial-index tuples), ascending.
    orbits: Vec<Vec<u32>>,
    coeffs: Vec<u32>,
}

impl SymmetricPolynomial {
    /// The zero polynomial with the given shape.
    pub fn zero(q: u64, r: usize, t: usize, degree: u32) -> Result<Self> {
        if r < 2 || t < 1 {
            return Err(Error::InvalidParameter("need r >= 2 and t >= 1"));
        }
        let orbits = orbit_count(r, t, degree);
        if orbits > ORBIT_LIMIT {
            return Err(Error::TooManyOrbits { orbits, limit: ORBIT_LIMIT });
        }
        let field = PrimeField::new(q)?;
        let monomials = block_monomials(t, degree);
        let mut keys = Vec::with_capacity(orbits as usize);
        for_each_orbit(monomials.len() as u32, r, |o| keys.push(o.to_vec()));
        let coeffs = vec![0; keys.len()];
        Ok(SymmetricPolynomial { field, r, t, degree, monomials, orbits: keys, coeffs })
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    fn orbit_position(&self, key: &[u32]) -> Option<usize> {
        let mut key = key.to_vec();
        key.sort_unstable();
        self.orbits.binary_search(&key).ok()
    }

    /// Coefficient of the orbit of a tuple of block-monomial indices (any order).
    pub fn coefficient(&self, key: &[u32]) -> Option<u32> {
        self.orbit_position(key).map(|i| self.coeffs[i])
    }

    pub fn set_coefficient(&mut self, key: &[u32], c: u32) -> Result<()> {
        let i = self.orbit_position(key).ok_or(Error::InvalidParameter("not an orbit of this shape"))?;
        self.coeffs[i] = self.field.reduce(c as u64);
        Ok(())
    }

    /// Values of every block monomial at `point`.
    pub fn monomial_values(&self, point: &[u32]) -> Vec<u32> {
        let f = &self.field;
        self.monomials
            .iter()
            .map(|m| m.iter().zip(point).fold(1, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64))))
            .collect()
    }

    /// `f(u^1, ..., u^r)`: every orbit contributes its coefficient times the sum over distinct
    /// arrangements of its block monomials over the points.
    pub fn evaluate(&self, points: &[&[u32]]) -> u32 {
        assert_eq!(points.len(), self.r, "one point per block");
        let f = &self.field;
        let values: Vec<Vec<u32>> = points.iter().map(|p| self.monomial_values(p)).collect();
        let mut total = 0;
        let mut arrangement = Vec::with_capacity(self.r);
        for (key, &c) in self.orbits.iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            arrangement.clear();
            arrangement.extend_from_slice(key);
            let mut sum = 0;
            loop {
                let term = arrangement.iter().zip(&values).fold(1, |acc, (&j, v)| f.mul(acc, v[j as usize]));
                sum = f.add(sum, term);
                if !next_permutation(&mut arrangement) {
                    break;
                }
            }
            total = f.add(total, f.mul(c, sum));
        }
        total
    }

    /// SHA-256 over the shape and coefficients, for reports.
    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        for v in [self.q(), self.r as u32, self.t as u32, self.degree] {
            h.update(v.to_le_bytes());
        }
        for &c in &self.coeffs {
            h.update(c.to_le_bytes());
        }
        h.finalize().into()
    }
}

/// Independent uniform coefficient per orbit, drawn in orbit order from `seed`.
pub fn ra_sample_polynomial(q: u64, r: usize, t: usize, degree: u32, seed: u64) -> Result<SymmetricPolynomial> {
    let mut f = SymmetricPolynomial::zero(q, r, t, degree)?;
    let mut rng = rng::seeded(seed);
    let q = f.q();
    for c in f.coeffs.iter_mut() {
        *c = rng.random_range(0..q);
    }
    Ok(f)
}

pub fn ra_evaluate(f: &SymmetricPolynomial, points: &[&[u32]]) -> u32 {
    f.evaluate(points)
}

/// Coordinates of vertex `id` in `F_q^t`, first coordinate most significant.
pub fn vertex_point(q: u32, t: usize, mut id: u32) -> Vec<u32> {
    let mut p = vec![0; t];
    for slot in p.iter_mut().rev() {
        *slot = id % q;
        id /= q;
    }
    p
}

pub fn point_vertex(q: u32, point: &[u32]) -> u32 {
    point.iter().fold(0, |acc, &x| acc * q + x)
}

/// The zero-set graph on `F_q^t`.
///
/// The coefficients are spread into a dense symmetric tensor over ordered monomial tuples,
/// which is contracted one block at a time along a depth-first walk of the `r`-subsets, so
/// each prefix is contracted once.
pub fn ra_build_graph(f: &SymmetricPolynomial) -> Result<Hypergraph> {
    let q = f.q();
    let n = (q as u64).checked_pow(f.t as u32).unwrap_or(u64::MAX);
    if n > VERTEX_LIMIT {
        return Err(Error::TooLarge { what: "vertices", size: n as u128, limit: VERTEX_LIMIT as u128 });
    }
    let m = f.monomials.len();
    let r = f.r;
    let size = (m as u128).pow(r as u32);
    if size > TENSOR_LIMIT {
        return Err(Error::TooLarge { what: "coefficient tensor", size, limit: TENSOR_LIMIT });
    }
    let mut tensor = vec![0u32; size as usize];
    for (key, &c) in f.orbits.iter().zip(&f.coeffs) {
        let mut arrangement = key.clone();
        loop {
            let flat = arrangement.iter().fold(0usize, |acc, &j| acc * m + j as usize);
            tensor[flat] = c;
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
    }
    let values: Vec<Vec<u32>> = (0..n as u32).map(|v| f.monomial_values(&vertex_point(q, f.t, v))).collect();
    // levels[k] holds the tensor contracted against the first k chosen vertices
    let mut levels: Vec<Vec<u32>> = (0..=r).map(|k| vec![0; m.pow((r - k) as u32)]).collect();
    levels[0] = tensor;
    let mut chosen = Vec::with_capacity(r);
    let mut flat = Vec::new();
    contract_dfs(&f.field, n as u32, r, 0, &mut levels, &values, &mut chosen, &mut flat);
    Ok(Hypergraph::from_sorted_flat(n as u32, r, flat))
}

#[allow(clippy::too_many_arguments)]
fn contract_dfs(
    field: &PrimeField,
    n: u32,
    r: usize,
    start: u32,
    levels: &mut [Vec<u32>],
    values: &[Vec<u32>],
    chosen: &mut Vec<u32>,
    out: &mut Vec<u32>,
) {
    let k = chosen.len();
    let p = field.modulus() as u64;
    for v in start..n - (r - k - 1) as u32 {
        let (head, tail) = levels.split_at_mut(k + 1);
        let src = &head[k];
        let dst = &mut tail[0];
        let stride = dst.len();
        let mv = &values[v as usize];
        for (i, slot) in dst.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &x) in mv.iter().enumerate() {
                acc += src[j * stride + i] as u64 * x as u64;
                if j % 64 == 63 {
                    acc %= p;
                }
            }
            *slot = (acc % p) as u32;
        }
        chosen.push(v);
        if k + 1 == r {
            if levels[r][0] == 0 {
                out.extend_from_slice(chosen);
            }
        } else {
            contract_dfs(field, n, r, v + 1, levels, values, chosen, out);
        }
        chosen.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadSequence {
    /// `t` pairwise disjoint ascending `(r-1)`-tuples, in ascending order.
    pub tuples: Vec<Vec<u32>>,
    pub witness_size: u32,
}

impl BadSequence {
    pub fn min_vertex(&self) -> u32 {
        self.tuples.iter().flatten().copied().min().expect("sequences are nonempty")
    }
}

/// Ordered sequences represented by one unordered family: `t! ((r-1)!)^t`.
pub fn ordered_multiplicity(r: usize, t: usize) -> u128 {
    factorial(t as u64) * factorial(r as u64 - 1).pow(t as u32)
}

/// Every bad family at threshold `c`, one entry per unordered family of tuples (multiply by
/// [`ordered_multiplicity`] for ordered sequences).
pub fn ra_find_bad_sequences(g: &Hypergraph, t: usize, c: u32) -> Result<Vec<BadSequence>> {
    if c == 0 || t == 0 {
        return Err(Error::InvalidParameter("threshold and t must be at least 1"));
    }
    let idx = ShadowLinkIndex::build(g);
    let mut out = Vec::new();
    let _ = idx.for_each_apex_family(t, c as usize, |family, w| {
        out.push(BadSequence {
            tuples: family.iter().map(|tau| tau.to_vec()).collect(),
            witness_size: crate::bitset::count_ones(w) as u32,
        });
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Histogram `|W| -> number of families` over families with nonempty `W`.
pub fn apex_size_histogram(g: &Hypergraph, t: usize) -> BTreeMap<u32, u64> {
    let idx = ShadowLinkIndex::build(g);
    let mut hist = BTreeMap::new();
    let _ = idx.for_each_apex_family(t, 1, |_, w| {
        *hist.entry(crate::bitset::count_ones(w) as u32).or_insert(0) += 1;
        ControlFlow::Continue(())
    });
    hist
}

/// Unordered families of `t` disjoint `(r-1)`-sets on `n` vertices.
pub fn family_count(n: u64, r: usize, t: usize) -> f64 {
    let k = (r as u64 - 1) * t as u64;
    if k > n {
        return 0.0;
    }
    // n! / ((n-k)! ((r-1)!)^t t!) built up as a product to stay in range
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= (n - i) as f64;
    }
    acc / libm::pow(factorial(r as u64 - 1) as f64, t as f64) / factorial(t as u64) as f64
}

/// `E[|W|^k]` for `k = 1..=max_k` over all families (empty `W` included).
pub fn apex_size_moments(hist: &BTreeMap<u32, u64>, families: f64, max_k: u32) -> Vec<f64> {
    (1..=max_k)
        .map(|k| {
            let s: f64 = hist.iter().map(|(&w, &c)| libm::pow(w as f64, k as f64) * c as f64).sum();
            if families > 0.0 { s / families } else { 0.0 }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneOutcome {
    pub graph: Hypergraph,
    /// Deleted original ids, ascending.
    pub removed: Vec<u32>,
    /// `kept[new id]` is the original id.
    pub kept: Vec<u32>,
}

/// Deletes the smallest vertex of every bad sequence and compacts the ids.
pub fn ra_prune(g: &Hypergraph, bad: &[BadSequence]) -> PruneOutcome {
    let mut removed: Vec<u32> = bad.iter().map(BadSequence::min_vertex).collect();
    removed.sort_unstable();
    removed.dedup();
    let (graph, kept) = g.without_vertices(&removed);
    PruneOutcome { graph, removed, kept }
}

/// Source of stage timings; the core library has no clock of its own.
pub trait Clock {
    fn now_ms(&self) -> f64;
}

/// Reports every timing as zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ms(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub digest: [u8; 32],
    pub n: u32,
    pub edges: usize,
    pub copies_before: u128,
    /// Unordered bad families.
    pub bad_sequences: usize,
    /// The same, counted as ordered sequences of ordered tuples.
    pub bad_sequences_ordered: u128,
    pub vertices_removed: usize,
    pub n_after: u32,
    pub edges_after: usize,
    pub copies_after: u128,
    /// Bad families found again after pruning (0 unless something is broken).
    pub residual_bad: usize,
    pub apex_histogram: BTreeMap<u32, u64>,
    /// `E[|W|^k]`, `k = 1..=4`, over all families of the unpruned graph.
    pub apex_moments: Vec<f64>,
    /// `(stage, milliseconds)` in execution order.
    pub timings: Vec<(&'static str, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineParams {
    pub q: u64,
    pub r: usize,
    pub t: usize,
    pub degree: u32,
    pub threshold: u32,
    pub seed: u64,
}

/// Sample, build, count the target, find and prune bad sequences, count again.
pub fn ra_pipeline(p: &PipelineParams, target: &PatternSpec, clock: &dyn Clock) -> Result<(PipelineReport, PruneOutcome)> {
    let mut timings = Vec::new();
    let mut mark = clock.now_ms();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, f64)>| {
        let now = clock.now_ms();
        timings.push((name, now - mark));
        mark = now;
    };
    let f = ra_sample_polynomial(p.q, p.r, p.t, p.degree, p.seed)?;
    lap("sample", &mut timings);
    let g = ra_build_graph(&f)?;
    lap("build", &mut timings);
    let copies_before = count_copies(&g, target)?;
    lap("count_before", &mut timings);
    let bad = ra_find_bad_sequences(&g, p.t, p.threshold)?;
    let apex_histogram = apex_size_histogram(&g, p.t);
    let families = family_count(g.n() as u64, p.r, p.t);
    let apex_moments = apex_size_moments(&apex_histogram, families, 4);
    lap("bad_sequences", &mut timings);
    let pruned = ra_prune(&g, &bad);
    let residual_bad = ra_find_bad_sequences(&pruned.graph, p.t, p.threshold)?.len();
    lap("prune", &mut timings);
    let copies_after = count_copies(&pruned.graph, target)?;
    lap("count_after", &mut timings);
    let report = PipelineReport {
        digest: f.digest(),
        n: g.n(),
        edges: g.edge_count(),
        copies_before,
        bad_sequences: bad.len(),
        bad_sequences_ordered: bad.len() as u128 * ordered_multiplicity(p.r, p.t),
        vertices_removed: pruned.removed.len(),
        n_after: pruned.graph.n(),
        edges_after: pruned.graph.edge_count(),
        copies_after,
        residual_bad,
        apex_histogram,
        apex_moments,
        timings,
    };
    Ok((report, pruned))
}
