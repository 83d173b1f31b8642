//! Complete 3-partite 3-graphs `K_{s1,s2,s3}^{(3)}`.
//!
//! The search fixes the two smaller classes `A` and `B` and intersects the apex sets of all
//! `|A| |B|` pairs; the largest class is read off the intersection. On graphs carrying a
//! 3-part labeling with transversal edges, apex sets live in a dense per-part table
//! ([`PartApexTable`]); otherwise the generic [`ShadowLinkIndex`] is used.

use core::ops::ControlFlow;

use alloc::vec;
use alloc::vec::Vec;

use super::shadow::ShadowLinkIndex;
use crate::bitset::{self, BitSet};
use crate::combin::{for_each_combination, for_each_combination_of};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultipartiteWitness {
    /// `classes[i]` has the i-th requested size.
    pub classes: Vec<Vec<u32>>,
}

impl MultipartiteWitness {
    pub fn edges(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for &x in &self.classes[0] {
            for &y in &self.classes[1] {
                for &z in &self.classes[2] {
                    let mut e = vec![x, y, z];
                    e.sort_unstable();
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn is_valid_in(&self, g: &Hypergraph) -> bool {
        let mut all: Vec<u32> = self.classes.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == total && g.r() == 3 && self.edges().iter().all(|e| g.contains_sorted(e))
    }
}

/// Dense apex sets of a 3-partite 3-graph: for parts `X < Y` and the third part `Z`,
/// `apex(x, y)` is a bitset over `Z`-local ids.
#[derive(Clone, Debug)]
pub struct PartApexTable {
    offsets: [u32; 3],
    sizes: [u32; 3],
    words: [usize; 3],
    tables: [Vec<u64>; 3],
}

fn others(z: usize) -> (usize, usize) {
    match z {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl PartApexTable {
    /// `None` unless `g` is a 3-graph with three parts and only transversal edges.
    pub fn build(g: &Hypergraph) -> Option<Self> {
        let parts = g.parts()?;
        if g.r() != 3 || parts.len() != 3 {
            return None;
        }
        let offsets = {
            let o = g.part_offsets()?;
            [o[0], o[1], o[2]]
        };
        let sizes = [parts[0], parts[1], parts[2]];
        let words = sizes.map(|s| bitset::words_for(s as usize));
        let mut tables: [Vec<u64>; 3] = Default::default();
        for z in 0..3 {
            let (x, y) = others(z);
            tables[z] = vec![0; sizes[x] as usize * sizes[y] as usize * words[z]];
        }
        for e in g.edges() {
            // edges are sorted and parts are consecutive ranges, so a transversal edge has
            // exactly one vertex per part in part order
            let local: Vec<u32> = e.iter().zip(offsets).map(|(&v, o)| v.wrapping_sub(o)).collect();
            if (0..3).any(|i| local[i] >= sizes[i]) {
                return None;
            }
            for z in 0..3 {
                let (x, y) = others(z);
                let cell = (local[x] as usize * sizes[y] as usize + local[y] as usize) * words[z];
                let bit = local[z] as usize;
                tables[z][cell + bit / 64] |= 1 << (bit % 64);
            }
        }
        Some(PartApexTable { offsets, sizes, words, tables })
    }

    pub fn offsets(&self) -> [u32; 3] {
        self.offsets
    }

    pub fn sizes(&self) -> [u32; 3] {
        self.sizes
    }

    pub fn words(&self, z: usize) -> usize {
        self.words[z]
    }

    /// Apex set in part `z` of the vertices with local ids `la` in part `pa` and `lb` in part
    /// `pb`, where `{pa, pb, z} = {0, 1, 2}`.
    #[inline]
    pub fn apex(&self, z: usize, pa: usize, la: u32, pb: usize, lb: u32) -> &[u64] {
        let (x, y) = others(z);
        let (lx, ly) = if pa == x { (la, lb) } else { debug_assert_eq!(pb, x); (lb, la) };
        debug_assert!(pa != pb && pa != z && pb != z);
        let w = self.words[z];
        let cell = (lx as usize * self.sizes[y] as usize + ly as usize) * w;
        &self.tables[z][cell..cell + w]
    }
}

struct Sorted {
    sizes: [usize; 3],
    /// `order[k]` is the requested position of the k-th smallest class.
    order: [usize; 3],
}

fn sort_sizes(sizes: &[u32]) -> Result<Sorted> {
    if sizes.len() != 3 || sizes.contains(&0) || sizes.iter().filter(|&&s| s > 2).count() > 2 {
        return Err(Error::UnsupportedSizes);
    }
    let mut order = [0, 1, 2];
    order.sort_by_key(|&i| sizes[i]);
    Ok(Sorted { sizes: order.map(|i| sizes[i] as usize), order })
}

fn witness_from(sorted: &Sorted, a: &[u32], b: &[u32], c: &[u32]) -> MultipartiteWitness {
    let mut classes = vec![Vec::new(); 3];
    classes[sorted.order[0]] = a.to_vec();
    classes[sorted.order[1]] = b.to_vec();
    classes[sorted.order[2]] = c.to_vec();
    MultipartiteWitness { classes }
}

/// Visits `(A, B, W)` with `|A| = a`, `|B| = b` and `W` the common apex set of size `>= c`,
/// over the three parts of a labeled graph. `W` is handed over as global ids.
fn labeled_search<F>(t: &PartApexTable, a: usize, b: usize, c: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[u32], &[u32], &[u32]) -> ControlFlow<()>,
{
    for px in 0..3 {
        for py in 0..3 {
            if py == px || (a == b && py < px) {
                continue;
            }
            let pz = 3 - px - py;
            let wz = t.words(pz);
            let sy = t.sizes[py] as usize;
            let mut per_y = vec![0u64; sy * wz];
            let mut acc = vec![0u64; b.max(1) * wz];
            for_each_combination(t.sizes[px] as usize, a, |set_a| {
                let mut cands: Vec<u32> = Vec::new();
                for y in 0..sy as u32 {
                    let cell = &mut per_y[y as usize * wz..(y as usize + 1) * wz];
                    cell.copy_from_slice(t.apex(pz, px, set_a[0], py, y));
                    for &x in &set_a[1..] {
                        bitset::and_assign(cell, t.apex(pz, px, x, py, y));
                    }
                    if bitset::count_ones(cell) >= c {
                        cands.push(y);
                    }
                }
                let glob_a: Vec<u32> = set_a.iter().map(|&x| x + t.offsets[px]).collect();
                let mut chosen = Vec::with_capacity(b);
                pick_b(&cands, &per_y, wz, b, c, 0, &mut acc, &mut chosen, &mut |set_b, w| {
                    let glob_b: Vec<u32> = set_b.iter().map(|&y| y + t.offsets[py]).collect();
                    let glob_w: Vec<u32> = bitset::ones(w).map(|z| z as u32 + t.offsets[pz]).collect();
                    f(&glob_a, &glob_b, &glob_w)
                })
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// Chooses `b` candidates (ascending) with running intersection of at least `c` bits.
#[allow(clippy::too_many_arguments)]
fn pick_b<F>(
    cands: &[u32],
    per_y: &[u64],
    w: usize,
    b: usize,
    c: usize,
    start: usize,
    acc: &mut [u64],
    chosen: &mut Vec<u32>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[u32], &[u64]) -> ControlFlow<()>,
{
    let depth = chosen.len();
    if cands.len() < b {
        return ControlFlow::Continue(());
    }
    for i in start..=cands.len() - (b - depth) {
        let y = cands[i] as usize;
        let cell = &per_y[y * w..(y + 1) * w];
        let (prev, cur) = acc.split_at_mut(depth * w);
        let cur = &mut cur[..w];
        if depth == 0 {
            cur.copy_from_slice(cell);
        } else {
            bitset::and_into(cur, &prev[(depth - 1) * w..], cell);
        }
        if bitset::count_ones(cur) < c {
            continue;
        }
        chosen.push(cands[i]);
        let r = if depth + 1 == b {
            f(chosen, &acc[depth * w..(depth + 1) * w])
        } else {
            pick_b(cands, per_y, w, b, c, i + 1, acc, chosen, f)
        };
        chosen.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Same contract as [`labeled_search`] for graphs without usable part labels.
fn unlabeled_search<F>(idx: &ShadowLinkIndex, a: usize, b: usize, c: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[u32], &[u32], &[u32]) -> ControlFlow<()>,
{
    let n = idx.n() as usize;
    let w = bitset::words_for(n);
    let mut per_y = vec![0u64; n * w];
    let mut acc = vec![0u64; b.max(1) * w];
    for_each_combination(n, a, |set_a| {
        let mut cands = Vec::new();
        'y: for y in 0..n as u32 {
            if set_a.contains(&y) || (a == b && y < set_a[0]) {
                continue;
            }
            let cell = &mut per_y[y as usize * w..(y as usize + 1) * w];
            for (k, &x) in set_a.iter().enumerate() {
                let key = if x < y { [x, y] } else { [y, x] };
                let Some(apex) = idx.apex(&key) else { continue 'y };
                if k == 0 {
                    cell.copy_from_slice(apex.words());
                } else {
                    bitset::and_assign(cell, apex.words());
                }
            }
            for &x in set_a {
                cell[x as usize / 64] &= !(1 << (x % 64));
            }
            if bitset::count_ones(cell) >= c {
                cands.push(y);
            }
        }
        let mut chosen = Vec::with_capacity(b);
        pick_b(&cands, &per_y, w, b, c, 0, &mut acc, &mut chosen, &mut |set_b, words| {
            let mut apex = BitSet::new(n);
            apex.words_mut().copy_from_slice(words);
            for &y in set_b {
                apex.remove(y as usize);
            }
            if apex.count() < c {
                return ControlFlow::Continue(());
            }
            f(set_a, set_b, &apex.to_vec())
        })
    })
}

fn search<F>(g: &Hypergraph, sizes: &[u32], f: &mut F) -> Result<ControlFlow<()>>
where
    F: FnMut(&Sorted, &[u32], &[u32], &[u32]) -> ControlFlow<()>,
{
    let sorted = sort_sizes(sizes)?;
    if g.r() != 3 {
        return Err(Error::InvalidParameter("complete 3-partite patterns need a 3-graph"));
    }
    let [a, b, c] = sorted.sizes;
    let mut visit = |x: &[u32], y: &[u32], w: &[u32]| f(&sorted, x, y, w);
    Ok(match PartApexTable::build(g) {
        Some(table) => labeled_search(&table, a, b, c, &mut visit),
        None => unlabeled_search(&ShadowLinkIndex::build(g), a, b, c, &mut visit),
    })
}

/// Visits copies of `K_{sizes}^{(3)}`; a copy may be reported more than once when two
/// sizes coincide.
pub fn for_each_multipartite_copy<F>(g: &Hypergraph, sizes: &[u32], mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&MultipartiteWitness) -> ControlFlow<()>,
{
    search(g, sizes, &mut |sorted, a, b, w| {
        for_each_combination_of(w, sorted.sizes[2], &mut |cset| f(&witness_from(sorted, a, b, cset)))
    })
}

pub fn find_multipartite_violation(g: &Hypergraph, sizes: &[u32]) -> Result<Option<MultipartiteWitness>> {
    let mut found = None;
    let _ = for_each_multipartite_copy(g, sizes, |w| {
        if w.is_valid_in(g) {
            found = Some(w.clone());
            ControlFlow::Break(())
        } else {
            debug_assert!(false, "apex table disagrees with the graph");
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}
