//! Three arithmetic progressions in `Z_m` whose pairwise sumsets are as large as possible.
//!
//! With `k = floor(sqrt(m)) - 1` and `l = floor(k / 2)`:
//!
//! ```text
//! S1 = {0, 1, ..., l-1}
//! S2 = {0, k, ..., (l-1) k}
//! S3 = {0, k+1, ..., (l-1)(k+1)}
//! ```
//!
//! Every pairwise sumset has exactly `l^2` elements. The norm construction exponentiates a
//! primitive root by these sets (with `m = q - 1`), which makes products `d_i e_j` distinct.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::combin::isqrt;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidonTriple {
    pub m: u64,
    pub k: u64,
    pub l: u64,
    pub sets: [Vec<u64>; 3],
}

impl SidonTriple {
    /// Sizes of `S1+S2`, `S1+S3`, `S2+S3`.
    pub fn sumset_sizes(&self) -> [usize; 3] {
        let [a, b, c] = &self.sets;
        [sumset_size(a, b, self.m), sumset_size(a, c, self.m), sumset_size(b, c, self.m)]
    }
}

/// `|{(s + t) mod m : s in S, t in T}|`.
pub fn sumset_size(s: &[u64], t: &[u64], m: u64) -> usize {
    let mut sums = BTreeSet::new();
    for &a in s {
        for &b in t {
            sums.insert((a + b) % m);
        }
    }
    sums.len()
}

/// True iff all three pairwise sumsets have size `l^2`.
pub fn sidon_verify(triple: &SidonTriple) -> bool {
    let target = (triple.l * triple.l) as usize;
    triple.sumset_sizes().iter().all(|&s| s == target)
}

pub fn sidon_build(m: u64) -> Result<SidonTriple> {
    let k = isqrt(m).saturating_sub(1);
    let l = k / 2;
    if l == 0 {
        return Err(Error::ModulusTooSmall(m));
    }
    let progression = |step: u64| (0..l).map(|i| i * step % m).collect::<Vec<_>>();
    let triple = SidonTriple { m, k, l, sets: [progression(1), progression(k), progression(k + 1)] };
    let expected = (l * l) as usize;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for ((i, j), size) in pairs.into_iter().zip(triple.sumset_sizes()) {
        if size != expected {
            return Err(Error::SumsetDeficient { i, j, size, expected });
        }
    }
    Ok(triple)
}
