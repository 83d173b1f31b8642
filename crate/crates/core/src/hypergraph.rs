//! Uniform hypergraphs on integer vertex ids.
//!
//! Edges are stored flat, each edge sorted ascending and the edge list sorted
//! lexicographically, so membership is a binary search and two graphs with the same edge set
//! compare equal. Optional part sizes describe a partition of `0..n` into consecutive ranges.

use core::cmp::Ordering;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    r: usize,
    edges: Vec<u32>,
    parts: Option<Vec<u32>>,
}

impl Hypergraph {
    pub fn empty(n: u32, r: usize) -> Self {
        assert!(r >= 1, "uniformity must be positive");
        Hypergraph { n, r, edges: Vec::new(), parts: None }
    }

    /// Builds a graph from arbitrary edges. Each edge is sorted; duplicates, repeated vertices
    /// and out-of-range ids are rejected.
    pub fn from_edges<I, E>(n: u32, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != r {
                return Err(Error::InvalidEdge);
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge);
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::BadVertexId(v));
            }
            rows.push(e);
        }
        rows.sort_unstable();
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge);
        }
        let mut g = Hypergraph::empty(n, r);
        g.edges = rows.into_iter().flatten().collect();
        Ok(g)
    }

    /// Edges already sorted within and across, free of duplicates. Checked in debug builds.
    pub(crate) fn from_sorted_flat(n: u32, r: usize, edges: Vec<u32>) -> Self {
        let g = Hypergraph { n, r, edges, parts: None };
        debug_assert!(g.edges.len().is_multiple_of(r));
        debug_assert!(g.edges().all(|e| e.windows(2).all(|w| w[0] < w[1]) && e[r - 1] < n));
        debug_assert!(g.edges.chunks_exact(r).zip(g.edges.chunks_exact(r).skip(1)).all(|(a, b)| a < b));
        g
    }

    /// Attaches consecutive part sizes; they must sum to `n`.
    pub fn with_parts(mut self, sizes: Vec<u32>) -> Result<Self> {
        if sizes.iter().map(|&s| s as u64).sum::<u64>() != self.n as u64 {
            return Err(Error::InvalidParameter("part sizes must sum to the vertex count"));
        }
        self.parts = Some(sizes);
        Ok(self)
    }

    pub fn clear_parts(&mut self) {
        self.parts = None;
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn parts(&self) -> Option<&[u32]> {
        self.parts.as_deref()
    }

    /// Start offset of each part.
    pub fn part_offsets(&self) -> Option<Vec<u32>> {
        self.parts.as_ref().map(|p| {
            let mut acc = 0;
            p.iter()
                .map(|&s| {
                    let o = acc;
                    acc += s;
                    o
                })
                .collect()
        })
    }

    pub fn part_of(&self, v: u32) -> Option<usize> {
        let mut start = 0;
        for (i, &s) in self.parts.as_ref()?.iter().enumerate() {
            if v < start + s {
                return Some(i);
            }
            start += s;
        }
        None
    }

    pub fn edges(&self) -> core::slice::ChunksExact<'_, u32> {
        self.edges.chunks_exact(self.r)
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i * self.r..(i + 1) * self.r]
    }

    fn find(&self, edge: &[u32]) -> core::result::Result<usize, usize> {
        let (mut lo, mut hi) = (0, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(edge) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Ok(mid),
            }
        }
        Err(lo)
    }

    /// Membership for an edge given in ascending order.
    #[inline]
    pub fn contains_sorted(&self, edge: &[u32]) -> bool {
        self.find(edge).is_ok()
    }

    /// Membership for an edge in any order.
    pub fn contains(&self, edge: &[u32]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.contains_sorted(&e)
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert(&mut self, edge: &[u32]) -> Result<bool> {
        if edge.len() != self.r {
            return Err(Error::InvalidEdge);
        }
        let mut e = edge.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge);
        }
        if let Some(&v) = e.iter().find(|&&v| v >= self.n) {
            return Err(Error::BadVertexId(v));
        }
        match self.find(&e) {
            Ok(_) => Ok(false),
            Err(pos) => {
                let at = pos * self.r;
                self.edges.splice(at..at, e);
                Ok(true)
            }
        }
    }

    /// Removes an edge; returns `false` if it was absent.
    pub fn remove(&mut self, edge: &[u32]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        match self.find(&e) {
            Ok(i) => {
                self.edges.drain(i * self.r..(i + 1) * self.r);
                true
            }
            Err(_) => false,
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.n as usize];
        for &v in &self.edges {
            d[v as usize] += 1;
        }
        d
    }

    /// The subgraph induced on `keep` (any order, no duplicates), relabeled so that the i-th
    /// smallest kept vertex becomes `i`. Part information is dropped.
    pub fn induced(&self, keep: &[u32]) -> Hypergraph {
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let mut relabel = vec![u32::MAX; self.n as usize];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        let mut flat = Vec::new();
        for e in self.edges() {
            if e.iter().all(|&v| relabel[v as usize] != u32::MAX) {
                // relabeling is monotone, so edge order is preserved
                flat.extend(e.iter().map(|&v| relabel[v as usize]));
            }
        }
        Hypergraph::from_sorted_flat(kept.len() as u32, self.r, flat)
    }

    /// Deletes the given vertices and compacts ids; returns the graph and the surviving
    /// original ids in new-id order.
    pub fn without_vertices(&self, removed: &[u32]) -> (Hypergraph, Vec<u32>) {
        let mut gone = vec![false; self.n as usize];
        for &v in removed {
            gone[v as usize] = true;
        }
        let kept: Vec<u32> = (0..self.n).filter(|&v| !gone[v as usize]).collect();
        (self.induced(&kept), kept)
    }

    /// Relabels vertices with `perm[old] = new` (a bijection on `0..n`).
    pub fn relabeled(&self, perm: &[u32]) -> Hypergraph {
        let mut rows: Vec<Vec<u32>> = self
            .edges()
            .map(|e| {
                let mut row: Vec<u32> = e.iter().map(|&v| perm[v as usize]).collect();
                row.sort_unstable();
                row
            })
            .collect();
        rows.sort_unstable();
        Hypergraph::from_sorted_flat(self.n, self.r, rows.into_iter().flatten().collect())
    }

    /// The complete `r`-graph on `n` vertices.
    pub fn complete(n: u32, r: usize) -> Hypergraph {
        let mut flat = Vec::new();
        let _ = crate::combin::for_each_combination(n as usize, r, |c| {
            flat.extend_from_slice(c);
            core::ops::ControlFlow::Continue(())
        });
        Hypergraph::from_sorted_flat(n, r, flat)
    }
}
