//! Brute-force oracles shared by the integration tests. None of them touch the shadow index
//! or the apex tables.

#![allow(dead_code)]

use std::ops::ControlFlow;

use hyperturan_core::combin::for_each_combination;
use hyperturan_core::Hypergraph;
use rand::Rng;

/// Dense membership table over ordered `r`-tuples.
pub struct Adjacency {
    n: usize,
    r: usize,
    bits: Vec<bool>,
}

impl Adjacency {
    pub fn new(g: &Hypergraph) -> Self {
        let n = g.n() as usize;
        let r = g.r();
        let mut bits = vec![false; n.pow(r as u32)];
        for e in g.edges() {
            bits[Self::key(n, e)] = true;
        }
        Adjacency { n, r, bits }
    }

    fn key(n: usize, sorted: &[u32]) -> usize {
        sorted.iter().fold(0, |acc, &v| acc * n + v as usize)
    }

    pub fn has(&self, vertices: &[u32]) -> bool {
        let mut e = vertices.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.bits[Self::key(self.n, &e)]
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

pub fn random_graph(n: u32, r: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = hyperturan_core::rng::seeded(seed);
    let mut edges = Vec::new();
    let _ = for_each_combination(n as usize, r, |e| {
        if rng.random_bool(p) {
            edges.push(e.to_vec());
        }
        ControlFlow::Continue(())
    });
    Hypergraph::from_edges(n, r, edges).unwrap()
}

fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let _ = for_each_combination(n as usize, k, |s| {
        out.push(s.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Every unordered family of `t` disjoint `(r-1)`-sets (lexicographic over the sorted list
/// of sets) with its common apex count, when that count is at least `c`.
pub fn brute_bad_families(g: &Hypergraph, t: usize, c: u32) -> Vec<(Vec<Vec<u32>>, u32)> {
    let adj = Adjacency::new(g);
    let n = g.n();
    let sets = subsets(n, g.r() - 1);
    let mut out = Vec::new();
    let _ = for_each_combination(sets.len(), t, |pick| {
        let fam: Vec<&Vec<u32>> = pick.iter().map(|&i| &sets[i as usize]).collect();
        let mut used: Vec<u32> = fam.iter().flat_map(|s| s.iter().copied()).collect();
        used.sort_unstable();
        if used.windows(2).any(|w| w[0] == w[1]) {
            return ControlFlow::Continue(());
        }
        let w = (0..n)
            .filter(|x| !used.contains(x))
            .filter(|&x| {
                fam.iter().all(|s| {
                    let mut e = (*s).clone();
                    e.push(x);
                    adj.has(&e)
                })
            })
            .count() as u32;
        if w >= c {
            out.push((fam.into_iter().cloned().collect(), w));
        }
        ControlFlow::Continue(())
    });
    out
}

/// Whether some `t` disjoint `(r-1)`-sets and a disjoint `s`-set form `K_{s,t}^{(r)}`.
pub fn brute_bipartite_exists(g: &Hypergraph, s: usize, t: usize) -> bool {
    brute_bipartite_count(g, s, t, true) > 0
}

/// Number of (unordered family, apex set) pairs; stops at the first when `first_only`.
pub fn brute_bipartite_count(g: &Hypergraph, s: usize, t: usize, first_only: bool) -> u128 {
    let adj = Adjacency::new(g);
    let n = g.n();
    let sets = subsets(n, g.r() - 1);
    let mut total = 0u128;
    let _ = for_each_combination(sets.len(), t, |pick| {
        let fam: Vec<&Vec<u32>> = pick.iter().map(|&i| &sets[i as usize]).collect();
        let mut used: Vec<u32> = fam.iter().flat_map(|x| x.iter().copied()).collect();
        used.sort_unstable();
        if used.windows(2).any(|w| w[0] == w[1]) {
            return ControlFlow::Continue(());
        }
        let rest: Vec<u32> = (0..n).filter(|x| !used.contains(x)).collect();
        let mut stop = false;
        let _ = hyperturan_core::combin::for_each_combination_of(&rest, s, &mut |ys: &[u32]| {
            let ok = fam.iter().all(|x| {
                ys.iter().all(|&y| {
                    let mut e = (*x).clone();
                    e.push(y);
                    adj.has(&e)
                })
            });
            if ok {
                total += 1;
                if first_only {
                    stop = true;
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if stop {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    total
}

/// Largest number of common apexes over every choice of two vertices in one part and two in
/// another, with apexes in the remaining part. Parts are given as vertex lists.
pub fn brute_max_apex(g: &Hypergraph, parts: &[Vec<u32>; 3]) -> usize {
    let adj = Adjacency::new(g);
    let mut best = 0;
    for z in 0..3 {
        let (x, y) = match z {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let px = &parts[x];
        let py = &parts[y];
        for i1 in 0..px.len() {
            for i2 in i1 + 1..px.len() {
                for j1 in 0..py.len() {
                    for j2 in j1 + 1..py.len() {
                        let c = parts[z]
                            .iter()
                            .filter(|&&w| {
                                [px[i1], px[i2]].iter().all(|&a| [py[j1], py[j2]].iter().all(|&b| adj.has(&[a, b, w])))
                            })
                            .count();
                        best = best.max(c);
                    }
                }
            }
        }
    }
    best
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
