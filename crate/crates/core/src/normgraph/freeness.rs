//! Common-apex census for `K_{2,2,s}^{(3)}` in the norm graph.
//!
//! A configuration is two vertices `(D_1, d_1), (D_2, d_2)` of one part and two vertices
//! `(E_1, e_1), (E_2, e_2)` of another; its apex count is the number of vertices of the
//! third part adjacent to all four pairs. A copy of `K_{2,2,s}` exists iff some
//! configuration has at least `s` common apexes.
//!
//! Every configuration induces the pairs `(D_i + E_j, d_i e_j)`. Usually the four are
//! distinct, but `(D_1 + E_1, d_1 e_1) = (D_2 + E_2, d_2 e_2)` (or the crossed equality) can
//! collapse them to three or two. Such configurations are tallied separately.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{KrsSolver, NormGraphParams};
use crate::bitset;
use crate::error::{Error, Result};
use crate::ffield::{ExtElem, NormTable};
use crate::hypergraph::Hypergraph;
use crate::rng;
use crate::verifier::{MultipartiteWitness, PartApexTable};

/// Most witnesses kept in a report.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreenessReport {
    /// Size `s` of the apex class.
    pub apex_size: u32,
    pub exhaustive: bool,
    pub configurations: u128,
    /// Configurations whose four induced pairs are not all distinct.
    pub degenerate_configurations: u128,
    pub max_apex: u64,
    pub max_apex_distinct: u64,
    pub max_apex_degenerate: u64,
    /// Configurations with at least `apex_size` common apexes.
    pub violations: u128,
    /// Smallest violating copies, classes `[pair, pair, apexes]`.
    pub witnesses: Vec<MultipartiteWitness>,
    /// Sampled mode: configurations with a nonzero apex count whose count was re-derived
    /// from the induced norm system.
    pub systems_checked: u64,
    pub max_solutions_distinct: u64,
    pub max_solutions_degenerate: u64,
    /// Sampled mode: configurations with more apexes than system solutions (must stay 0).
    pub inconsistencies: u64,
}

impl FreenessReport {
    fn empty(apex_size: u32, exhaustive: bool) -> Self {
        FreenessReport { apex_size, exhaustive, ..Default::default() }
    }

    fn record(&mut self, count: u64, degenerate: bool) {
        self.configurations += 1;
        self.max_apex = self.max_apex.max(count);
        if degenerate {
            self.degenerate_configurations += 1;
            self.max_apex_degenerate = self.max_apex_degenerate.max(count);
        } else {
            self.max_apex_distinct = self.max_apex_distinct.max(count);
        }
        if count >= self.apex_size as u64 {
            self.violations += 1;
        }
    }

    fn push_witness(&mut self, w: MultipartiteWitness) {
        let at = self.witnesses.binary_search(&w).unwrap_or_else(|i| i);
        if at < WITNESS_CAP && self.witnesses.get(at) != Some(&w) {
            self.witnesses.insert(at, w);
            self.witnesses.truncate(WITNESS_CAP);
        }
    }

    /// Folds `other` into `self`; the result does not depend on merge order.
    pub fn merge(&mut self, other: FreenessReport) {
        self.configurations += other.configurations;
        self.degenerate_configurations += other.degenerate_configurations;
        self.max_apex = self.max_apex.max(other.max_apex);
        self.max_apex_distinct = self.max_apex_distinct.max(other.max_apex_distinct);
        self.max_apex_degenerate = self.max_apex_degenerate.max(other.max_apex_degenerate);
        self.violations += other.violations;
        self.systems_checked += other.systems_checked;
        self.max_solutions_distinct = self.max_solutions_distinct.max(other.max_solutions_distinct);
        self.max_solutions_degenerate = self.max_solutions_degenerate.max(other.max_solutions_degenerate);
        self.inconsistencies += other.inconsistencies;
        for w in other.witnesses {
            self.push_witness(w);
        }
    }
}

/// Folds partial reports of one run.
pub fn merge_partials<I: IntoIterator<Item = FreenessReport>>(apex_size: u32, exhaustive: bool, parts: I) -> FreenessReport {
    let mut out = FreenessReport::empty(apex_size, exhaustive);
    for p in parts {
        out.merge(p);
    }
    out
}

fn others(z: usize) -> (usize, usize) {
    match z {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// A slice of the exhaustive scan: apexes in `apex_part`, first vertex fixed to local id
/// `first` of the lower remaining part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreenessUnit {
    pub apex_part: usize,
    pub first: u32,
}

pub fn freeness_units(params: &NormGraphParams) -> Vec<FreenessUnit> {
    let sizes = params.part_sizes();
    let mut out = Vec::new();
    for apex_part in 0..3 {
        let (x, _) = others(apex_part);
        out.extend((0..sizes[x]).map(|first| FreenessUnit { apex_part, first }));
    }
    out
}

struct Decoded {
    big: Vec<ExtElem>,
    small: Vec<u32>,
}

fn decode_part(params: &NormGraphParams, part: usize) -> Decoded {
    let l = params.l(part);
    let n = params.part_sizes()[part];
    let ext = params.ext();
    Decoded {
        big: (0..n).map(|v| ext.element(v / l)).collect(),
        small: (0..n).map(|v| params.b_values(part)[(v % l) as usize]).collect(),
    }
}

/// Number of distinct pairs among `(D_i + E_j, d_i e_j)`.
fn distinct_pairs(params: &NormGraphParams, d: [(ExtElem, u32); 2], e: [(ExtElem, u32); 2]) -> usize {
    let ext = params.ext();
    let base = ext.base();
    let pair = |i: usize, j: usize| (ext.add(d[i].0, e[j].0), base.mul(d[i].1, e[j].1));
    4 - usize::from(pair(0, 0) == pair(1, 1)) - usize::from(pair(0, 1) == pair(1, 0))
}

fn check_apex_size(s: u32) -> Result<()> {
    if s == 0 {
        return Err(Error::UnsupportedSizes);
    }
    Ok(())
}

/// Runs one slice of the exhaustive scan against the part apex table of the materialized graph.
pub fn run_unit(params: &NormGraphParams, table: &PartApexTable, apex_size: u32, unit: FreenessUnit) -> FreenessReport {
    let mut rep = FreenessReport::empty(apex_size, true);
    let z = unit.apex_part;
    let (x, y) = others(z);
    let sizes = table.sizes();
    let offsets = table.offsets();
    let w = table.words(z);
    let dx = decode_part(params, x);
    let dy = decode_part(params, y);
    let ly = sizes[y] as usize;
    let a1 = unit.first;
    let mut cells = vec![0u64; ly * w];
    let mut counts = vec![0usize; ly];
    let mut both = vec![0u64; w];
    for a2 in a1 + 1..sizes[x] {
        for b in 0..ly {
            let cell = &mut cells[b * w..(b + 1) * w];
            bitset::and_into(cell, table.apex(z, x, a1, y, b as u32), table.apex(z, x, a2, y, b as u32));
            counts[b] = bitset::count_ones(cell);
        }
        let d = [(dx.big[a1 as usize], dx.small[a1 as usize]), (dx.big[a2 as usize], dx.small[a2 as usize])];
        for b1 in 0..ly {
            for b2 in b1 + 1..ly {
                let count = if counts[b1] == 0 || counts[b2] == 0 {
                    0
                } else {
                    bitset::and_into(&mut both, &cells[b1 * w..(b1 + 1) * w], &cells[b2 * w..(b2 + 1) * w]);
                    bitset::count_ones(&both)
                };
                let e = [(dy.big[b1], dy.small[b1]), (dy.big[b2], dy.small[b2])];
                let degenerate = distinct_pairs(params, d, e) < 4;
                rep.record(count as u64, degenerate);
                if count >= apex_size as usize {
                    let apexes = bitset::ones(&both).take(apex_size as usize).map(|v| v as u32 + offsets[z]).collect();
                    rep.push_witness(MultipartiteWitness {
                        classes: vec![
                            vec![a1 + offsets[x], a2 + offsets[x]],
                            vec![b1 as u32 + offsets[y], b2 as u32 + offsets[y]],
                            apexes,
                        ],
                    });
                }
            }
        }
    }
    rep
}

/// Largest number of configurations an exhaustive scan would examine.
pub fn exhaustive_configurations(params: &NormGraphParams) -> u128 {
    let s = params.part_sizes().map(|v| v as u128);
    let c2 = |v: u128| v * v.saturating_sub(1) / 2;
    c2(s[0]) * c2(s[1]) + c2(s[0]) * c2(s[2]) + c2(s[1]) * c2(s[2])
}

/// Exhaustive census over every configuration of the materialized graph `g`, all three
/// choices of apex part, sequentially. Fails with `BudgetExceeded` if more than `budget`
/// configurations would be examined.
pub fn norm_graph_freeness_report(
    params: &NormGraphParams,
    g: &Hypergraph,
    apex_size: u32,
    budget: u128,
) -> Result<FreenessReport> {
    check_apex_size(apex_size)?;
    let needed = exhaustive_configurations(params);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let table = PartApexTable::build(g).ok_or(Error::InvalidParameter("graph lacks its three parts"))?;
    if table.sizes() != params.part_sizes() {
        return Err(Error::InvalidParameter("graph does not match the parameters"));
    }
    let parts = freeness_units(params).into_iter().map(|u| run_unit(params, &table, apex_size, u));
    Ok(merge_partials(apex_size, true, parts))
}

/// Samples `samples` configurations (apex part and both pairs uniform) from the implicit graph.
/// Apex counts walk the norm fibers; every nonzero count is compared with the number of
/// solutions of the induced system, which bounds it from above.
pub fn sampled_freeness_report(
    params: &NormGraphParams,
    apex_size: u32,
    samples: u64,
    seed: u64,
    budget: u128,
) -> Result<FreenessReport> {
    check_apex_size(apex_size)?;
    if samples as u128 > budget {
        return Err(Error::BudgetExceeded { needed: samples as u128, budget });
    }
    let solver = KrsSolver::new(params.ext().clone())?;
    let mut rep = FreenessReport::empty(apex_size, false);
    for i in 0..samples {
        rep.merge(sample_one(params, &solver, apex_size, seed, i)?);
    }
    Ok(rep)
}

fn distinct_locals(rng: &mut rng::Rng, n: u32) -> (u32, u32) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

/// Sample `index` of the stream; exposed so callers can split sampling across workers.
pub fn sample_one(
    params: &NormGraphParams,
    solver: &KrsSolver,
    apex_size: u32,
    seed: u64,
    index: u64,
) -> Result<FreenessReport> {
    let mut rep = FreenessReport::empty(apex_size, false);
    let ext = params.ext();
    let base = ext.base();
    let table: &NormTable = solver.table();
    let sizes = params.part_sizes();
    let offsets = params.part_offsets();
    let mut rng = rng::stream(seed, index);
    let z = rng.random_range(0..3usize);
    let (x, y) = others(z);
    let (a1, a2) = distinct_locals(&mut rng, sizes[x]);
    let (b1, b2) = distinct_locals(&mut rng, sizes[y]);
    let vertex = |part: usize, local: u32| {
        let l = params.l(part);
        (ext.element(local / l), params.b_values(part)[(local % l) as usize])
    };
    let d = [vertex(x, a1), vertex(x, a2)];
    let e = [vertex(y, b1), vertex(y, b2)];
    let mut pairs: Vec<(ExtElem, u32)> = Vec::with_capacity(4);
    for dv in d {
        for ev in e {
            pairs.push((ext.add(dv.0, ev.0), base.mul(dv.1, ev.1)));
        }
    }
    let mut apexes = Vec::new();
    let lz = params.l(z);
    for (k, &f) in params.b_values(z).iter().enumerate() {
        let (t0, s0) = pairs[0];
        for &wi in table.fiber(base.mul(s0, f)) {
            let f_big = ext.sub(ext.element(wi), t0);
            let ok = pairs[1..]
                .iter()
                .all(|&(t, s)| table.norm_of_index(ext.index(ext.add(t, f_big))) == base.mul(s, f));
            if ok {
                apexes.push(offsets[z] + ext.index(f_big) * lz + k as u32);
            }
        }
    }
    apexes.sort_unstable();
    let mut distinct = pairs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let degenerate = distinct.len() < 4;
    let count = apexes.len() as u64;
    rep.record(count, degenerate);
    if count > 0 {
        let solutions = solver.count(&distinct)?;
        rep.systems_checked += 1;
        if degenerate {
            rep.max_solutions_degenerate = rep.max_solutions_degenerate.max(solutions);
        } else {
            rep.max_solutions_distinct = rep.max_solutions_distinct.max(solutions);
        }
        if count > solutions {
            rep.inconsistencies += 1;
        }
    }
    if count >= apex_size as u64 {
        apexes.truncate(apex_size as usize);
        rep.push_witness(MultipartiteWitness {
            classes: vec![
                vec![a1 + offsets[x], a2 + offsets[x]],
                vec![b1 + offsets[y], b2 + offsets[y]],
                apexes,
            ],
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::PrimeField;
    use crate::normgraph::{norm_graph_build, norm_graph_implicit};

    fn small() -> NormGraphParams {
        NormGraphParams::with_exponents(PrimeField::new(3).unwrap(), [alloc::vec![0], alloc::vec![1], alloc::vec![0]])
            .unwrap()
    }

    #[test]
    fn exhaustive_matches_direct_count_q3() {
        let p = small();
        let g = norm_graph_build(&p).unwrap();
        let rep = norm_graph_freeness_report(&p, &g, 2, u128::MAX).unwrap();
        assert_eq!(rep.configurations, exhaustive_configurations(&p));
        // direct oracle: count common apexes with plain membership queries
        let n = g.n();
        let mut best = 0;
        for z in 0..3u32 {
            let in_part = |v: u32, part: u32| v / 27 == part;
            let (x, y) = match z { 0 => (1, 2), 1 => (0, 2), _ => (0, 1) };
            for a1 in (0..n).filter(|&v| in_part(v, x)) {
                for a2 in (a1 + 1..n).filter(|&v| in_part(v, x)) {
                    for b1 in (0..n).filter(|&v| in_part(v, y)) {
                        for b2 in (b1 + 1..n).filter(|&v| in_part(v, y)) {
                            let c = (0..n)
                                .filter(|&w| in_part(w, z))
                                .filter(|&w| {
                                    [a1, a2].iter().all(|&a| {
                                        [b1, b2].iter().all(|&b| g.contains(&[a, b, w]))
                                    })
                                })
                                .count();
                            best = best.max(c as u64);
                        }
                    }
                }
            }
        }
        assert_eq!(rep.max_apex, best);
        assert_eq!(rep.violations > 0, best >= 2);
        for w in &rep.witnesses {
            assert!(w.is_valid_in(&g));
        }
    }

    #[test]
    fn sampled_counts_agree_with_membership() {
        let p = NormGraphParams::with_exponents(PrimeField::new(5).unwrap(), [alloc::vec![0], alloc::vec![1], alloc::vec![2]])
            .unwrap();
        let h = norm_graph_implicit(p.clone());
        let solver = KrsSolver::new(p.ext().clone()).unwrap();
        for i in 0..40 {
            let rep = sample_one(&p, &solver, 1, 9, i).unwrap();
            assert_eq!(rep.configurations, 1);
            assert_eq!(rep.inconsistencies, 0);
            if let Some(w) = rep.witnesses.first() {
                for &a in &w.classes[0] {
                    for &b in &w.classes[1] {
                        for &c in &w.classes[2] {
                            assert!(h.contains(a, b, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn budget_and_sizes() {
        let p = small();
        let g = norm_graph_build(&p).unwrap();
        assert!(matches!(norm_graph_freeness_report(&p, &g, 7, 10), Err(Error::BudgetExceeded { .. })));
        assert_eq!(norm_graph_freeness_report(&p, &g, 0, u128::MAX), Err(Error::UnsupportedSizes));
        assert!(matches!(sampled_freeness_report(&p, 7, 100, 1, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn merge_is_order_independent() {
        let p = small();
        let g = norm_graph_build(&p).unwrap();
        let table = PartApexTable::build(&g).unwrap();
        let parts: Vec<FreenessReport> = freeness_units(&p).into_iter().map(|u| run_unit(&p, &table, 1, u)).collect();
        let forward = merge_partials(1, true, parts.clone());
        let backward = merge_partials(1, true, parts.into_iter().rev());
        assert_eq!(forward, backward);
        assert!(forward.witnesses.len() <= WITNESS_CAP);
    }
}
