//! Arithmetic in odd prime fields `F_p` and their cubic extensions `F_{p^3}`.
//!
//! The extension is represented in the polynomial basis `1, x, x^2` modulo the
//! lexicographically smallest monic irreducible cubic. Elements are totally ordered by their
//! coefficient triple `(c0, c1, c2)`, and [`ExtField::index`] maps that order onto
//! `0..p^3`. Every "smallest" choice below (modulus, generator, primitive root) refers to
//! this order, so constructions are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest field size [`norm_fiber_census`] will enumerate.
pub const CENSUS_LIMIT: u64 = 1 << 20;
/// Largest extension for which a [`NormTable`] is built.
pub const NORM_TABLE_LIMIT: u64 = 1 << 24;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field `F_p` for an odd prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidParameter("modulus must fit in 32 bits"));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: u32) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let mut ord = self.p as u64 - 1;
        for f in prime_factors(ord) {
            while ord.is_multiple_of(f) && self.pow(a, ord / f) == 1 {
                ord /= f;
            }
        }
        Some(ord)
    }

    /// Smallest residue of multiplicative order `p - 1`.
    pub fn primitive_element(&self) -> u32 {
        let n = self.p as u64 - 1;
        let factors = prime_factors(n);
        (1..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != 1))
            .expect("every prime field has a primitive root")
    }
}

/// Constructs `F_p`, rejecting composite and even moduli.
pub fn make_prime_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// Smallest residue of multiplicative order `q - 1`.
pub fn primitive_element(field: &PrimeField) -> u32 {
    field.primitive_element()
}

/// An element `c0 + c1 x + c2 x^2` of a cubic extension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem(pub [u32; 3]);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem([0, 0, 0]);
    pub const ONE: ExtElem = ExtElem([1, 0, 0]);

    pub fn from_base(a: u32) -> Self {
        ExtElem([a, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// `Some(c0)` when the element lies in the base field.
    pub fn as_base(&self) -> Option<u32> {
        (self.0[1] == 0 && self.0[2] == 0).then_some(self.0[0])
    }
}

/// `F_{q^3}` over an odd prime `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    /// `[m0, m1, m2]` for the modulus `x^3 + m2 x^2 + m1 x + m0`.
    modulus: [u32; 3],
    generator: ExtElem,
    /// Distinct primes dividing `q^3 - 1`.
    group_factors: Vec<u64>,
}

impl ExtField {
    pub fn new(base: PrimeField) -> Result<Self> {
        let q = base.modulus() as u64;
        // q^3 - 1 must fit comfortably in u64 for order computations.
        if q >= 1 << 21 {
            return Err(Error::FieldTooLarge { elements: u64::MAX, limit: 1 << 63 });
        }
        let modulus = smallest_irreducible_cubic(&base);
        let n = q * q * q - 1;
        let mut group_factors = prime_factors(q - 1);
        for f in prime_factors(q * q + q + 1) {
            if !group_factors.contains(&f) {
                group_factors.push(f);
            }
        }
        group_factors.sort_unstable();
        let mut field = ExtField { base, modulus, generator: ExtElem::ONE, group_factors };
        let generator = (1..q * q * q)
            .map(|i| field.element(i as u32))
            .find(|z| field.group_factors.iter().all(|&f| field.pow(*z, n / f) != ExtElem::ONE))
            .expect("the multiplicative group of a finite field is cyclic");
        field.generator = generator;
        Ok(field)
    }

    #[inline]
    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.base.modulus()
    }

    /// `q^3`.
    #[inline]
    pub fn size(&self) -> u64 {
        let q = self.q() as u64;
        q * q * q
    }

    pub fn modulus(&self) -> [u32; 3] {
        self.modulus
    }

    pub fn generator(&self) -> ExtElem {
        self.generator
    }

    /// Position of `z` in the canonical order: `c0 q^2 + c1 q + c2`.
    #[inline]
    pub fn index(&self, z: ExtElem) -> u32 {
        let q = self.q();
        (z.0[0] * q + z.0[1]) * q + z.0[2]
    }

    #[inline]
    pub fn element(&self, index: u32) -> ExtElem {
        let q = self.q();
        ExtElem([index / (q * q), index / q % q, index % q])
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.size() as u32).map(|i| self.element(i))
    }

    #[inline]
    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem([f.add(a.0[0], b.0[0]), f.add(a.0[1], b.0[1]), f.add(a.0[2], b.0[2])])
    }

    #[inline]
    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem([f.sub(a.0[0], b.0[0]), f.sub(a.0[1], b.0[1]), f.sub(a.0[2], b.0[2])])
    }

    #[inline]
    pub fn neg(&self, a: ExtElem) -> ExtElem {
        self.sub(ExtElem::ZERO, a)
    }

    pub fn scale(&self, a: ExtElem, c: u32) -> ExtElem {
        let f = &self.base;
        ExtElem([f.mul(a.0[0], c), f.mul(a.0[1], c), f.mul(a.0[2], c)])
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.q() as u64;
        let mut c = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] += a.0[i] as u64 * b.0[j] as u64;
            }
        }
        for v in c.iter_mut() {
            *v %= p;
        }
        // x^3 = -(m0 + m1 x + m2 x^2)
        for k in (3..5).rev() {
            let top = c[k];
            c[k] = 0;
            for (s, &m) in self.modulus.iter().enumerate() {
                let slot = &mut c[k - 3 + s];
                *slot = (*slot + p - top * m as u64 % p) % p;
            }
        }
        ExtElem([c[0] as u32, c[1] as u32, c[2] as u32])
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let mut base = a;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.size() - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: ExtElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.size() - 1;
        for &f in &self.group_factors {
            while ord.is_multiple_of(f) && self.pow(a, ord / f) == ExtElem::ONE {
                ord /= f;
            }
        }
        Some(ord)
    }

    /// The relative norm to `F_q`: `z^(q^2 + q + 1)`.
    pub fn norm(&self, z: ExtElem) -> u32 {
        let q = self.q() as u64;
        let w = self.pow(z, q * q + q + 1);
        debug_assert_eq!(w.as_base(), Some(w.0[0]), "norm must land in the base field");
        w.0[0]
    }
}

/// Builds `F_{q^3}` with the lexicographically smallest monic irreducible cubic and the
/// smallest primitive element.
pub fn make_ext_field(base: PrimeField) -> Result<ExtField> {
    ExtField::new(base)
}

/// Free-function form of [`ExtField::norm`].
pub fn norm(field: &ExtField, z: ExtElem) -> u32 {
    field.norm(z)
}

fn smallest_irreducible_cubic(f: &PrimeField) -> [u32; 3] {
    let q = f.modulus();
    // A cubic is irreducible iff it has no root in the base field.
    let has_root = |m: [u32; 3]| {
        (0..q).any(|x| {
            let x2 = f.mul(x, x);
            let v = f.add(f.add(f.mul(x2, x), f.mul(m[2], x2)), f.add(f.mul(m[1], x), m[0]));
            v == 0
        })
    };
    for m0 in 1..q {
        for m1 in 0..q {
            for m2 in 0..q {
                if !has_root([m0, m1, m2]) {
                    return [m0, m1, m2];
                }
            }
        }
    }
    unreachable!("monic irreducible cubics exist over every finite field")
}

/// Number of preimages of each base value under the norm, by direct exponentiation of every
/// element of `F_{q^3}`. Index `c` of the result holds `|Norm^{-1}(c)|`.
pub fn norm_fiber_census(field: &ExtField) -> Result<Vec<u64>> {
    let size = field.size();
    if size > CENSUS_LIMIT {
        return Err(Error::FieldTooLarge { elements: size, limit: CENSUS_LIMIT });
    }
    let mut counts = vec![0u64; field.q() as usize];
    for z in field.elements() {
        counts[field.norm(z) as usize] += 1;
    }
    Ok(counts)
}

/// The norm of every element of `F_{q^3}`, with fibers grouped by value.
///
/// Built by walking powers of the generator, using `Norm(g^k) = Norm(g)^k`, which costs one
/// multiplication per element instead of one exponentiation.
#[derive(Clone, Debug)]
pub struct NormTable {
    values: Vec<u32>,
    /// `fibers[c]` lists element indices with norm `c`, ascending.
    fibers: Vec<Vec<u32>>,
}

impl NormTable {
    pub fn new(field: &ExtField) -> Result<Self> {
        let size = field.size();
        if size > NORM_TABLE_LIMIT {
            return Err(Error::FieldTooLarge { elements: size, limit: NORM_TABLE_LIMIT });
        }
        let base = field.base();
        let ng = field.norm(field.generator());
        let mut values = vec![0u32; size as usize];
        let mut z = ExtElem::ONE;
        let mut nz = 1u32;
        for _ in 0..size - 1 {
            values[field.index(z) as usize] = nz;
            z = field.mul(z, field.generator());
            nz = base.mul(nz, ng);
        }
        let mut fibers = vec![Vec::new(); field.q() as usize];
        for (i, &v) in values.iter().enumerate() {
            fibers[v as usize].push(i as u32);
        }
        Ok(NormTable { values, fibers })
    }

    #[inline]
    pub fn norm_of_index(&self, index: u32) -> u32 {
        self.values[index as usize]
    }

    #[inline]
    pub fn fiber(&self, value: u32) -> &[u32] {
        &self.fibers[value as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn ext(p: u64) -> ExtField {
        make_ext_field(make_prime_field(p).unwrap()).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        let f = make_prime_field(5).unwrap();
        assert_eq!(f.mul(2, 3), 1);
        assert!(make_prime_field(29).is_ok());
        assert_eq!(make_prime_field(4), Err(Error::NotPrime(4)));
        assert_eq!(make_prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(make_prime_field(2), Err(Error::EvenModulus(2)));
    }

    #[test]
    fn prime_field_ops_close() {
        let f = make_prime_field(7).unwrap();
        for a in 0..7 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..7 {
                assert!(f.add(a, b) < 7 && f.sub(a, b) < 7 && f.mul(a, b) < 7);
                assert_eq!(f.add(f.sub(a, b), b), a);
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn primitive_elements() {
        for (q, g) in [(5, 2), (3, 2), (7, 3)] {
            let f = make_prime_field(q).unwrap();
            assert_eq!(primitive_element(&f), g);
        }
    }

    /// Order by repeated multiplication, independent of the factor-based `order`.
    fn naive_order(f: &ExtField, z: ExtElem) -> u64 {
        let mut w = z;
        let mut k = 1;
        while w != ExtElem::ONE {
            w = f.mul(w, z);
            k += 1;
        }
        k
    }

    #[test]
    fn extension_generators_have_full_order() {
        for (p, ord) in [(3, 26), (5, 124), (7, 342)] {
            let f = ext(p);
            assert_eq!(naive_order(&f, f.generator()), ord);
            // full order implies the quotient ring is a field: powers hit every nonzero element
            let mut seen = BTreeSet::new();
            let mut w = ExtElem::ONE;
            for _ in 0..ord {
                seen.insert(w);
                w = f.mul(w, f.generator());
            }
            assert_eq!(seen.len() as u64, ord);
        }
    }

    #[test]
    fn extension_is_deterministic_and_minimal() {
        let a = ext(5);
        let b = ext(5);
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
        // every smaller element has smaller order
        for i in 1..a.index(a.generator()) {
            assert!(naive_order(&a, a.element(i)) < 124);
        }
    }

    #[test]
    fn norm_examples() {
        let f = ext(3);
        assert_eq!(f.norm(ExtElem::ZERO), 0);
        assert_eq!(f.norm(ExtElem::ONE), 1);
        assert_eq!(f.norm(f.generator()), 2);
        // direct exponentiation oracle: g^13 computed by 12 multiplications
        let mut w = f.generator();
        for _ in 0..12 {
            w = f.mul(w, f.generator());
        }
        assert_eq!(w, ExtElem::from_base(2));
    }

    #[test]
    fn norm_is_multiplicative_exhaustively() {
        for p in [3, 5] {
            let f = ext(p);
            for a in f.elements() {
                for b in f.elements() {
                    let base = f.base();
                    assert_eq!(f.norm(f.mul(a, b)), base.mul(f.norm(a), f.norm(b)));
                }
            }
        }
    }

    #[test]
    fn fiber_census() {
        for (q, fiber) in [(3u64, 13u64), (5, 31), (7, 57)] {
            let census = norm_fiber_census(&ext(q)).unwrap();
            assert_eq!(census[0], 1);
            assert!(census[1..].iter().all(|&c| c == fiber), "q={q}: {census:?}");
        }
    }

    #[test]
    fn census_refuses_large_fields() {
        let f = ext(103);
        assert!(matches!(norm_fiber_census(&f), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn norm_table_matches_direct_norm() {
        for p in [3, 5, 7, 11] {
            let f = ext(p);
            let t = NormTable::new(&f).unwrap();
            for z in f.elements() {
                assert_eq!(t.norm_of_index(f.index(z)), f.norm(z));
            }
            let q = p as usize;
            assert_eq!(t.fiber(0), &[0]);
            for c in 1..q as u32 {
                assert_eq!(t.fiber(c).len(), q * q + q + 1);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = ext(7);
        for i in 0..f.size() as u32 {
            assert_eq!(f.index(f.element(i)), i);
        }
        // canonical order agrees with derived Ord on coefficient triples
        assert!(f.element(3) < f.element(50));
    }

    #[test]
    fn inverses() {
        let f = ext(5);
        for z in f.elements().skip(1) {
            assert_eq!(f.mul(z, f.inv(z).unwrap()), ExtElem::ONE);
        }
    }
}
