//! Counting solutions `(X, x)` of `Norm(D_i + X) = d_i x` for all `i`.
//!
//! For `s` distinct pairs `(D_i, d_i)` the system has at most `(s - 1)!` solutions; the
//! counters here are brute force so that bound can be checked rather than assumed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ffield::{ExtElem, ExtField, NormTable};

/// Largest `q^3 (q - 1)` a brute-force count may cover.
pub const KRS_LIMIT: u64 = 10_000_000;

fn check(ext: &ExtField, pairs: &[(ExtElem, u32)]) -> Result<()> {
    let q = ext.q();
    let work = ext.size() * (q as u64 - 1);
    if work > KRS_LIMIT {
        return Err(Error::FieldTooLarge { elements: work, limit: KRS_LIMIT });
    }
    if pairs.iter().any(|&(big, d)| d == 0 || d >= q || big.0.iter().any(|&c| c >= q)) {
        return Err(Error::InvalidParameter("pairs need reduced coordinates and nonzero d"));
    }
    let mut sorted: Vec<(ExtElem, u32)> = pairs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePairs);
    }
    Ok(())
}

/// Each `X` fixes `x = Norm(D_1 + X) / d_1`, so one pass over `F_{q^3}` suffices.
fn count_with(ext: &ExtField, pairs: &[(ExtElem, u32)], norm: impl Fn(ExtElem) -> u32) -> u64 {
    let base = ext.base();
    let Some(&(d1_big, d1)) = pairs.first() else {
        return ext.size() * (ext.q() as u64 - 1);
    };
    let d1_inv = base.inv(d1).expect("d is nonzero");
    let mut count = 0;
    for x_big in ext.elements() {
        let x = base.mul(norm(ext.add(d1_big, x_big)), d1_inv);
        if x == 0 {
            continue;
        }
        if pairs[1..].iter().all(|&(big, d)| norm(ext.add(big, x_big)) == base.mul(d, x)) {
            count += 1;
        }
    }
    count
}

/// Number of `(X, x)` in `F_{q^3} x F_q^*` with `Norm(D_i + X) = d_i x` for every pair.
pub fn krs_solution_count(ext: &ExtField, pairs: &[(ExtElem, u32)]) -> Result<u64> {
    check(ext, pairs)?;
    Ok(count_with(ext, pairs, |z| ext.norm(z)))
}

/// Table-backed counter for repeated queries over one field.
#[derive(Clone, Debug)]
pub struct KrsSolver {
    ext: ExtField,
    table: NormTable,
}

impl KrsSolver {
    pub fn new(ext: ExtField) -> Result<Self> {
        let table = NormTable::new(&ext)?;
        Ok(KrsSolver { ext, table })
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn table(&self) -> &NormTable {
        &self.table
    }

    pub fn count(&self, pairs: &[(ExtElem, u32)]) -> Result<u64> {
        check(&self.ext, pairs)?;
        Ok(count_with(&self.ext, pairs, |z| self.table.norm_of_index(self.ext.index(z))))
    }
}
