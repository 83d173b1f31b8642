//! Backtracking embedding search for small explicit targets.

use core::ops::ControlFlow;

use alloc::vec;
use alloc::vec::Vec;

use super::shadow::ShadowLinkIndex;
use crate::bitset::BitSet;
use crate::combin::for_each_combination;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest target (in vertices) the generic counter accepts.
pub const TARGET_VERTEX_LIMIT: u32 = 10;

/// A small `r`-graph `T` on vertices `0..v` with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGraph {
    graph: Hypergraph,
}

impl TargetGraph {
    pub fn new(graph: Hypergraph) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::InvalidParameter("target graph needs at least one edge"));
        }
        Ok(TargetGraph { graph })
    }

    pub fn from_edges<I, E>(v: u32, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        Self::new(Hypergraph::from_edges(v, r, edges)?)
    }

    pub fn single_edge(r: usize) -> Self {
        TargetGraph { graph: Hypergraph::complete(r as u32, r) }
    }

    /// `K_{s,t}^{(r)}`: tuple `i` is `{i(r-1), ..., i(r-1) + r-2}`, apexes follow.
    pub fn bipartite(r: usize, s: u32, t: u32) -> Result<Self> {
        if r < 2 || s == 0 || t == 0 {
            return Err(Error::InvalidParameter("bipartite pattern needs r >= 2 and s, t >= 1"));
        }
        let w = (r - 1) as u32;
        let mut edges = Vec::new();
        for i in 0..t {
            for y in 0..s {
                let mut e: Vec<u32> = (i * w..(i + 1) * w).collect();
                e.push(t * w + y);
                edges.push(e);
            }
        }
        Self::from_edges(t * w + s, r, edges)
    }

    /// Complete `k`-partite `k`-graph with consecutive parts of the given sizes.
    pub fn multipartite(sizes: &[u32]) -> Result<Self> {
        if sizes.len() < 2 || sizes.contains(&0) {
            return Err(Error::InvalidParameter("multipartite pattern needs >= 2 nonempty parts"));
        }
        let mut offset = 0;
        let parts: Vec<Vec<u32>> = sizes
            .iter()
            .map(|&s| {
                let p = (offset..offset + s).collect();
                offset += s;
                p
            })
            .collect();
        let mut edges = vec![Vec::new()];
        for p in &parts {
            edges = edges
                .into_iter()
                .flat_map(|e: Vec<u32>| {
                    p.iter().map(move |&x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        Self::from_edges(offset, sizes.len(), edges)
    }

    pub fn v(&self) -> u32 {
        self.graph.n()
    }

    pub fn e(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }
}

/// All vertex permutations of `t` that map its edge set onto itself, as `perm[v] = image`.
pub fn automorphisms(t: &TargetGraph) -> Vec<Vec<u32>> {
    let g = &t.graph;
    let v = g.n() as usize;
    let mut out = Vec::new();
    let mut perm = vec![u32::MAX; v];
    let mut used = vec![false; v];
    let degrees = g.degrees();
    auto_dfs(g, &degrees, 0, &mut perm, &mut used, &mut out);
    out
}

fn auto_dfs(
    g: &Hypergraph,
    degrees: &[u32],
    k: usize,
    perm: &mut [u32],
    used: &mut [bool],
    out: &mut Vec<Vec<u32>>,
) {
    let v = perm.len();
    if k == v {
        out.push(perm.to_vec());
        return;
    }
    for img in 0..v {
        if used[img] || degrees[img] != degrees[k] {
            continue;
        }
        perm[k] = img as u32;
        // every edge whose largest vertex is k is now fully mapped
        let ok = g.edges().filter(|e| e[e.len() - 1] as usize == k).all(|e| {
            let mut m: Vec<u32> = e.iter().map(|&x| perm[x as usize]).collect();
            m.sort_unstable();
            g.contains_sorted(&m)
        });
        if ok {
            used[img] = true;
            auto_dfs(g, degrees, k + 1, perm, used, out);
            used[img] = false;
        }
    }
    perm[k] = u32::MAX;
}

struct Plan {
    /// Target vertices in placement order.
    order: Vec<u32>,
    /// For each placement step, the `(r-1)`-tuples of earlier target vertices that close an
    /// edge with the vertex placed at this step.
    closing: Vec<Vec<Vec<u32>>>,
}

/// Greedy order: next is the unplaced vertex closing the most edges, then the one with most
/// edges touching placed vertices, then the highest degree.
fn plan(t: &TargetGraph) -> Plan {
    let g = &t.graph;
    let v = g.n() as usize;
    let degrees = g.degrees();
    let mut placed = vec![false; v];
    let mut order = Vec::with_capacity(v);
    let mut closing = Vec::with_capacity(v);
    for _ in 0..v {
        let mut best: Option<(usize, (usize, usize, u32))> = None;
        for u in (0..v).filter(|&u| !placed[u]) {
            let mut closes = 0;
            let mut touches = 0;
            for e in g.edges().filter(|e| e.contains(&(u as u32))) {
                let others = e.iter().filter(|&&x| x as usize != u);
                let k = others.clone().filter(|&&x| placed[x as usize]).count();
                if k == g.r() - 1 {
                    closes += 1;
                }
                if k > 0 {
                    touches += 1;
                }
            }
            let key = (closes, touches, degrees[u]);
            if best.is_none_or(|(_, b)| key > b) {
                best = Some((u, key));
            }
        }
        let (u, _) = best.expect("an unplaced vertex remains");
        let tuples = g
            .edges()
            .filter(|e| e.contains(&(u as u32)) && e.iter().all(|&x| x as usize == u || placed[x as usize]))
            .map(|e| e.iter().copied().filter(|&x| x as usize != u).collect())
            .collect();
        placed[u] = true;
        order.push(u as u32);
        closing.push(tuples);
    }
    Plan { order, closing }
}

fn check_target(g: &Hypergraph, t: &TargetGraph) -> Result<()> {
    if t.v() > TARGET_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "target vertices",
            size: t.v() as u128,
            limit: TARGET_VERTEX_LIMIT as u128,
        });
    }
    if t.r() != g.r() || g.r() < 2 {
        return Err(Error::InvalidParameter("target uniformity differs from the graph's"));
    }
    Ok(())
}

struct Search<'a> {
    idx: &'a ShadowLinkIndex,
    plan: Plan,
    /// When set, only embeddings that are lexicographically minimal in their orbit are kept.
    autos: Option<Vec<Vec<u32>>>,
    map: Vec<u32>,
    used: BitSet,
    key: Vec<u32>,
}

impl Search<'_> {
    fn canonical(&self) -> bool {
        let Some(autos) = &self.autos else { return true };
        autos.iter().all(|sigma| {
            let image = sigma.iter().map(|&s| self.map[s as usize]);
            image.cmp(self.map.iter().copied()) != core::cmp::Ordering::Less
        })
    }

    fn dfs<F>(&mut self, step: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if step == self.plan.order.len() {
            if self.canonical() {
                return f(&self.map);
            }
            return ControlFlow::Continue(());
        }
        let n = self.idx.n() as usize;
        let u = self.plan.order[step] as usize;
        let mut cand: Option<BitSet> = None;
        for k in 0..self.plan.closing[step].len() {
            self.key.clear();
            let tuple = &self.plan.closing[step][k];
            self.key.extend(tuple.iter().map(|&x| self.map[x as usize]));
            self.key.sort_unstable();
            let Some(apex) = self.idx.apex(&self.key) else { return ControlFlow::Continue(()) };
            match &mut cand {
                None => cand = Some(apex.clone()),
                Some(c) => c.intersect_with(apex),
            }
        }
        let cand = cand.unwrap_or_else(|| BitSet::full(n));
        for x in cand.ones() {
            if self.used.contains(x) {
                continue;
            }
            self.map[u] = x as u32;
            self.used.insert(x);
            let r = self.dfs(step + 1, f);
            self.used.remove(x);
            r?;
        }
        self.map[u] = u32::MAX;
        ControlFlow::Continue(())
    }
}

fn run<F>(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph, canonical: bool, f: &mut F) -> Result<ControlFlow<()>>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    check_target(g, t)?;
    if t.v() > g.n() {
        return Ok(ControlFlow::Continue(()));
    }
    let mut s = Search {
        idx,
        plan: plan(t),
        autos: canonical.then(|| automorphisms(t)),
        map: vec![u32::MAX; t.v() as usize],
        used: BitSet::new(g.n() as usize),
        key: Vec::with_capacity(g.r()),
    };
    Ok(s.dfs(0, f))
}

/// Visits injective maps `target vertex -> graph vertex` sending every target edge to an
/// edge of `g`.
pub fn for_each_embedding<F>(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    run(g, idx, t, false, &mut f)
}

/// Visits one embedding per copy of `t` in `g`: the one whose image tuple is
/// lexicographically smallest among its automorphic images.
pub fn for_each_pattern_copy<F>(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    run(g, idx, t, true, &mut f)
}

pub fn count_embeddings(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph) -> Result<u128> {
    let mut total = 0u128;
    let _ = for_each_embedding(g, idx, t, |_| {
        total += 1;
        ControlFlow::Continue(())
    })?;
    Ok(total)
}

/// Number of subgraphs of `g` isomorphic to `t`.
pub fn count_pattern_copies(g: &Hypergraph, idx: &ShadowLinkIndex, t: &TargetGraph) -> Result<u128> {
    let mut total = 0u128;
    let _ = for_each_pattern_copy(g, idx, t, |_| {
        total += 1;
        ControlFlow::Continue(())
    })?;
    Ok(total)
}

/// Whether `map` embeds `t` into `g`.
pub fn is_embedding(g: &Hypergraph, t: &TargetGraph, map: &[u32]) -> bool {
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == map.len()
        && map.len() == t.v() as usize
        && map.iter().all(|&x| x < g.n())
        && t.graph.edges().all(|e| {
            let mut m: Vec<u32> = e.iter().map(|&x| map[x as usize]).collect();
            m.sort_unstable();
            g.contains_sorted(&m)
        })
}

/// Labeled embeddings by trying every injective map; only for tiny inputs.
pub fn naive_embedding_count(g: &Hypergraph, t: &TargetGraph) -> u128 {
    let v = t.v() as usize;
    let mut total = 0;
    let _ = for_each_combination(g.n() as usize, v, |set| {
        let mut perm = set.to_vec();
        loop {
            if is_embedding(g, t, &perm) {
                total += 1;
            }
            if !crate::combin::next_permutation(&mut perm) {
                break;
            }
        }
        ControlFlow::Continue(())
    });
    total
}
