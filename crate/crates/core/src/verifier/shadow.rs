//! Shadow links: for each `(r-1)`-set `tau` lying in some edge, the set of vertices `y` with
//! `tau + {y}` an edge.

use core::ops::ControlFlow;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{self, BitSet};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowLinkIndex {
    n: u32,
    r: usize,
    links: BTreeMap<Vec<u32>, BitSet>,
}

impl ShadowLinkIndex {
    pub fn build(g: &Hypergraph) -> Self {
        let n = g.n();
        let r = g.r();
        let mut links: BTreeMap<Vec<u32>, BitSet> = BTreeMap::new();
        let mut key = Vec::with_capacity(r.saturating_sub(1));
        for e in g.edges() {
            for skip in 0..r {
                key.clear();
                key.extend(e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                match links.get_mut(key.as_slice()) {
                    Some(set) => set.insert(e[skip] as usize),
                    None => {
                        let mut set = BitSet::new(n as usize);
                        set.insert(e[skip] as usize);
                        links.insert(key.clone(), set);
                    }
                }
            }
        }
        ShadowLinkIndex { n, r, links }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Apex set of an ascending `(r-1)`-tuple, if it lies in any edge.
    #[inline]
    pub fn apex(&self, tau: &[u32]) -> Option<&BitSet> {
        self.links.get(tau)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BitSet)> {
        self.links.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Visits every unordered family of `t` pairwise disjoint `(r-1)`-sets whose common apex
    /// set `W` has at least `min_apex` elements. Families are visited in canonical form (sets
    /// ascending, family sorted lexicographically), and the callback receives the family and
    /// the words of `W`.
    ///
    /// `W` never contains a vertex of the family: each apex set already excludes its own
    /// tuple, and the running intersection excludes the others.
    pub fn for_each_apex_family<F>(&self, t: usize, min_apex: usize, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&[&[u32]], &[u64]) -> ControlFlow<()>,
    {
        assert!(t >= 1 && min_apex >= 1, "families need t >= 1 and min_apex >= 1");
        let candidates: Vec<(&[u32], &BitSet)> =
            self.iter().filter(|(_, apex)| apex.count() >= min_apex).collect();
        if candidates.len() < t {
            return ControlFlow::Continue(());
        }
        let words = bitset::words_for(self.n as usize);
        let mut acc = vec![0u64; words * t];
        let mut chosen: Vec<&[u32]> = Vec::with_capacity(t);
        let mut used = BitSet::new(self.n as usize);
        family_dfs(&candidates, t, min_apex, 0, &mut acc, words, &mut chosen, &mut used, &mut f)
    }
}

#[allow(clippy::too_many_arguments)]
fn family_dfs<'a, F>(
    candidates: &[(&'a [u32], &BitSet)],
    t: usize,
    min_apex: usize,
    start: usize,
    acc: &mut [u64],
    words: usize,
    chosen: &mut Vec<&'a [u32]>,
    used: &mut BitSet,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[&[u32]], &[u64]) -> ControlFlow<()>,
{
    let depth = chosen.len();
    let remaining = t - depth;
    for i in start..=candidates.len() - remaining {
        let (tau, apex) = candidates[i];
        if tau.iter().any(|&v| used.contains(v as usize)) {
            continue;
        }
        let (prev, cur) = acc.split_at_mut(depth * words);
        let cur = &mut cur[..words];
        if depth == 0 {
            cur.copy_from_slice(apex.words());
        } else {
            bitset::and_into(cur, &prev[(depth - 1) * words..], apex.words());
        }
        if bitset::count_ones(cur) < min_apex {
            continue;
        }
        chosen.push(tau);
        if remaining == 1 {
            let r = f(chosen, &acc[depth * words..(depth + 1) * words]);
            chosen.pop();
            r?;
        } else {
            for &v in tau {
                used.insert(v as usize);
            }
            let r = family_dfs(candidates, t, min_apex, i + 1, acc, words, chosen, used, f);
            for &v in tau {
                used.remove(v as usize);
            }
            chosen.pop();
            r?;
        }
    }
    ControlFlow::Continue(())
}

/// Free-function form of [`ShadowLinkIndex::build`].
pub fn build_shadow_links(g: &Hypergraph) -> ShadowLinkIndex {
    ShadowLinkIndex::build(g)
}
