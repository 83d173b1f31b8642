//! The norm hypergraph.
//!
//! Three parts `A_i = F_{q^3} x B_i`, where `B_i = {g^j : j in S_i}` for a primitive root `g`
//! of `F_q` and exponent sets `S_i` in `Z_{q-1}` with pairwise sumsets of full size. Vertices
//! `(D1, d1)`, `(D2, d2)`, `(D3, d3)` from distinct parts form an edge iff
//! `Norm(D1 + D2 + D3) = d1 d2 d3`.
//!
//! Vertex ids are part-major: part `i` starts at `|A_0| + ... + |A_{i-1}|`, and within a
//! part the vertex `(D, g^{S_i[k]})` sits at `index(D) * |S_i| + k`.

mod freeness;
mod krs;

pub use freeness::{
    exhaustive_configurations, freeness_units, merge_partials, norm_graph_freeness_report, run_unit, sample_one,
    sampled_freeness_report, FreenessReport, FreenessUnit, WITNESS_CAP,
};
pub use krs::{krs_solution_count, KrsSolver, KRS_LIMIT};

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ffield::{ExtElem, ExtField, NormTable, PrimeField};
use crate::hypergraph::Hypergraph;
use crate::sidon::{sidon_build, sumset_size};

/// Most triple evaluations a materialization may perform.
pub const MATERIALIZE_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Debug)]
pub struct NormGraphParams {
    ext: ExtField,
    primitive: u32,
    exponents: [Vec<u64>; 3],
    /// `b[i][k] = g^{exponents[i][k]}`.
    b: [Vec<u32>; 3],
}

impl NormGraphParams {
    /// Default exponent sets: the three progressions for modulus `q - 1`.
    pub fn new(q: u64) -> Result<Self> {
        let base = PrimeField::new(q)?;
        let triple = sidon_build(q - 1)?;
        Self::with_exponents(base, triple.sets)
    }

    /// Explicit exponent sets; each must be nonempty with distinct residues mod `q - 1`, and
    /// every pairwise sumset must have full size.
    pub fn with_exponents(base: PrimeField, exponents: [Vec<u64>; 3]) -> Result<Self> {
        let m = base.modulus() as u64 - 1;
        for s in &exponents {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if s.is_empty() || sorted.len() != s.len() || s.iter().any(|&j| j >= m) {
                return Err(Error::InvalidParameter("exponent sets need distinct residues below q - 1"));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let size = sumset_size(&exponents[i], &exponents[j], m);
            let expected = exponents[i].len() * exponents[j].len();
            if size != expected {
                return Err(Error::SumsetDeficient { i, j, size, expected });
            }
        }
        let ext = ExtField::new(base)?;
        let primitive = base.primitive_element();
        let b = [0, 1, 2].map(|i| exponents[i].iter().map(|&j| base.pow(primitive, j)).collect());
        Ok(NormGraphParams { ext, primitive, exponents, b })
    }

    pub fn q(&self) -> u32 {
        self.ext.q()
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    /// The primitive root `g` of `F_q`.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn exponents(&self) -> &[Vec<u64>; 3] {
        &self.exponents
    }

    /// `B_i` in exponent order.
    pub fn b_values(&self, part: usize) -> &[u32] {
        &self.b[part]
    }

    /// `|B_i|`.
    pub fn l(&self, part: usize) -> u32 {
        self.b[part].len() as u32
    }

    pub fn part_sizes(&self) -> [u32; 3] {
        let q3 = self.ext.size() as u32;
        [0, 1, 2].map(|i| q3 * self.l(i))
    }

    pub fn part_offsets(&self) -> [u32; 3] {
        let s = self.part_sizes();
        [0, s[0], s[0] + s[1]]
    }

    pub fn n(&self) -> u64 {
        self.part_sizes().iter().map(|&s| s as u64).sum()
    }

    pub fn vertex(&self, part: usize, d_big: ExtElem, position: u32) -> u32 {
        self.part_offsets()[part] + self.ext.index(d_big) * self.l(part) + position
    }

    /// `(part, D, position of d in B_part)`.
    pub fn decode(&self, id: u32) -> Result<(usize, ExtElem, u32)> {
        let offsets = self.part_offsets();
        let sizes = self.part_sizes();
        for part in (0..3).rev() {
            if id >= offsets[part] {
                let local = id - offsets[part];
                if local >= sizes[part] {
                    return Err(Error::BadVertexId(id));
                }
                let l = self.l(part);
                return Ok((part, self.ext.element(local / l), local % l));
            }
        }
        unreachable!("part 0 starts at 0")
    }

    /// `|A_1| |A_2| |A_3|`.
    pub fn evaluations(&self) -> u128 {
        self.part_sizes().iter().map(|&s| s as u128).product()
    }

    /// Exact edge count `l1 l2 l3 q^6 (q^2 + q + 1)`: for fixed `D2, D3` and `d1, d2, d3` the
    /// sum `D1 + D2 + D3` ranges over the fiber of `d1 d2 d3`.
    pub fn edge_count(&self) -> BigUint {
        let q = BigUint::from(self.q());
        let ls: u64 = (0..3).map(|i| self.l(i) as u64).product();
        BigUint::from(ls) * q.pow(6) * (&q * &q + &q + 1u32)
    }
}

/// The materialized graph, with the three parts attached.
pub fn norm_graph_build(params: &NormGraphParams) -> Result<Hypergraph> {
    let evaluations = params.evaluations();
    if evaluations > MATERIALIZE_LIMIT {
        return Err(Error::TooLargeToMaterialize { evaluations, limit: MATERIALIZE_LIMIT });
    }
    let ext = params.ext();
    let base = ext.base();
    let table = NormTable::new(ext)?;
    let size = ext.size() as u32;
    let offsets = params.part_offsets();
    let l = [0, 1, 2].map(|i| params.l(i));
    let b = [0, 1, 2].map(|i| params.b_values(i));
    let mut flat = Vec::new();
    // loops run in id order, so edges come out sorted
    for i1 in 0..size {
        let d1_big = ext.element(i1);
        for (k1, &d1) in b[0].iter().enumerate() {
            let v1 = offsets[0] + i1 * l[0] + k1 as u32;
            for i2 in 0..size {
                let s12 = ext.add(d1_big, ext.element(i2));
                for (k2, &d2) in b[1].iter().enumerate() {
                    let v2 = offsets[1] + i2 * l[1] + k2 as u32;
                    let p12 = base.mul(d1, d2);
                    for i3 in 0..size {
                        let nv = table.norm_of_index(ext.index(ext.add(s12, ext.element(i3))));
                        if nv == 0 {
                            continue;
                        }
                        for (k3, &d3) in b[2].iter().enumerate() {
                            if base.mul(p12, d3) == nv {
                                flat.extend_from_slice(&[v1, v2, offsets[2] + i3 * l[2] + k3 as u32]);
                            }
                        }
                    }
                }
            }
        }
    }
    let n = params.n() as u32;
    Hypergraph::from_sorted_flat(n, 3, flat).with_parts(params.part_sizes().to_vec())
}

/// Membership oracle for graphs too large to materialize. Norms are computed by
/// exponentiation on each query.
#[derive(Clone, Debug)]
pub struct ImplicitNormGraph {
    params: NormGraphParams,
}

impl ImplicitNormGraph {
    pub fn new(params: NormGraphParams) -> Self {
        ImplicitNormGraph { params }
    }

    pub fn params(&self) -> &NormGraphParams {
        &self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n()
    }

    pub fn edge_count(&self) -> BigUint {
        self.params.edge_count()
    }

    /// Whether the three vertices (in any order, one per part) form an edge.
    pub fn contains(&self, u: u32, v: u32, w: u32) -> Result<bool> {
        let mut parts = [None, None, None];
        for id in [u, v, w] {
            let (part, d_big, pos) = self.params.decode(id)?;
            if parts[part].is_some() {
                return Err(Error::SamePart { part });
            }
            parts[part] = Some((d_big, self.params.b_values(part)[pos as usize]));
        }
        let [Some((x1, y1)), Some((x2, y2)), Some((x3, y3))] = parts else {
            unreachable!("three ids in three distinct parts")
        };
        let ext = self.params.ext();
        let base = ext.base();
        let lhs = ext.norm(ext.add(ext.add(x1, x2), x3));
        Ok(lhs == base.mul(base.mul(y1, y2), y3))
    }
}

pub fn norm_graph_implicit(params: NormGraphParams) -> ImplicitNormGraph {
    ImplicitNormGraph::new(params)
}

pub fn norm_graph_contains(h: &ImplicitNormGraph, u: u32, v: u32, w: u32) -> Result<bool> {
    h.contains(u, v, w)
}

pub fn norm_graph_edge_count(params: &NormGraphParams) -> BigUint {
    params.edge_count()
}

/// Both sides of `27^7 E^7 >= n^19`, which is `E >= n^{19/7} / 27` raised to the 7th power.
pub fn density_sides(edges: &BigUint, n: u64) -> (BigUint, BigUint) {
    let lhs = (BigUint::from(27u32) * edges).pow(7);
    let rhs = BigUint::from(n).pow(19);
    (lhs, rhs)
}

pub fn density_inequality_holds(params: &NormGraphParams) -> bool {
    let (lhs, rhs) = density_sides(&params.edge_count(), params.n());
    lhs >= rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn singleton(q: u64) -> NormGraphParams {
        NormGraphParams::with_exponents(PrimeField::new(q).unwrap(), [vec![0], vec![1], vec![2]]).unwrap()
    }

    #[test]
    fn default_parameters() {
        let p = NormGraphParams::new(29).unwrap();
        assert_eq!(p.exponents(), &[vec![0, 1], vec![0, 4], vec![0, 5]]);
        assert_eq!(p.n(), 146_334);
        assert_eq!(p.primitive(), 2);
        assert_eq!(p.b_values(1), &[1, 16]);
        assert_eq!(NormGraphParams::new(3).unwrap_err(), Error::ModulusTooSmall(2));
        assert!(NormGraphParams::new(53).is_ok());
    }

    #[test]
    fn rejects_bad_exponents() {
        let f = PrimeField::new(7).unwrap();
        assert!(NormGraphParams::with_exponents(f, [vec![0, 0], vec![1], vec![2]]).is_err());
        assert!(NormGraphParams::with_exponents(f, [vec![6], vec![1], vec![2]]).is_err());
        assert!(NormGraphParams::with_exponents(f, [vec![], vec![1], vec![2]]).is_err());
        assert!(matches!(
            NormGraphParams::with_exponents(f, [vec![0, 1], vec![0, 1], vec![2]]),
            Err(Error::SumsetDeficient { .. })
        ));
    }

    #[test]
    fn decode_round_trip() {
        let p = NormGraphParams::with_exponents(PrimeField::new(5).unwrap(), [vec![0], vec![0, 1], vec![2]]).unwrap();
        assert_eq!(p.part_sizes(), [125, 250, 125]);
        for id in 0..p.n() as u32 {
            let (part, d_big, pos) = p.decode(id).unwrap();
            assert_eq!(p.vertex(part, d_big, pos), id);
        }
        assert_eq!(p.decode(500), Err(Error::BadVertexId(500)));
    }

    #[test]
    fn q5_materialized_count() {
        let p = singleton(5);
        let g = norm_graph_build(&p).unwrap();
        assert_eq!(g.n(), 375);
        assert_eq!(g.edge_count(), 484_375);
        assert_eq!(p.edge_count(), BigUint::from(484_375u32));
        assert!(g.edges().all(|e| e[0] < 125 && (125..250).contains(&e[1]) && e[2] >= 250));
    }

    #[test]
    fn fiber_oracle_membership() {
        let p = singleton(5);
        let h = norm_graph_implicit(p.clone());
        let ext = p.ext();
        let z = ExtElem([1, 2, 3]);
        let target = ext.base().mul(ext.base().mul(p.b_values(0)[0], p.b_values(1)[0]), p.b_values(2)[0]);
        let d2 = ExtElem([0, 1, 0]);
        let d3 = ExtElem([4, 0, 1]);
        let mut fiber = 0;
        for w in ext.elements() {
            if ext.norm(w) == target {
                fiber += 1;
                let d1 = ext.sub(ext.sub(w, d2), d3);
                assert!(h.contains(p.vertex(0, d1, 0), p.vertex(1, d2, 0), p.vertex(2, d3, 0)).unwrap());
            }
        }
        assert_eq!(fiber, 31);
        assert!(!h.contains(p.vertex(0, z, 0), p.vertex(1, z, 0), p.vertex(2, ext.neg(ext.add(z, z)), 0)).unwrap());
        assert_eq!(h.contains(0, 1, 300), Err(Error::SamePart { part: 0 }));
        assert_eq!(h.contains(0, 130, 375), Err(Error::BadVertexId(375)));
    }

    #[test]
    fn zero_triple_is_not_an_edge() {
        let p = NormGraphParams::new(29).unwrap();
        let h = norm_graph_implicit(p.clone());
        for a in 0..2 {
            for b in 0..2 {
                let ids = [p.vertex(0, ExtElem::ZERO, a), p.vertex(1, ExtElem::ZERO, b), p.vertex(2, ExtElem::ZERO, 0)];
                assert!(!h.contains(ids[2], ids[0], ids[1]).unwrap());
            }
        }
    }

    #[test]
    fn materialized_matches_implicit_q5() {
        let p = NormGraphParams::with_exponents(PrimeField::new(5).unwrap(), [vec![0], vec![1], vec![0, 2]]).unwrap();
        let g = norm_graph_build(&p).unwrap();
        assert_eq!(BigUint::from(g.edge_count()), p.edge_count());
        let h = norm_graph_implicit(p.clone());
        let off = p.part_offsets();
        let sizes = p.part_sizes();
        for u in (0..sizes[0]).step_by(7) {
            for v in (0..sizes[1]).step_by(5) {
                for w in 0..sizes[2] {
                    let e = [off[0] + u, off[1] + v, off[2] + w];
                    assert_eq!(g.contains_sorted(&e), h.contains(e[0], e[1], e[2]).unwrap());
                }
            }
        }
    }

    #[test]
    fn materialize_guard() {
        let p = NormGraphParams::new(29).unwrap();
        assert!(matches!(norm_graph_build(&p), Err(Error::TooLargeToMaterialize { .. })));
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(singleton(7).edge_count(), BigUint::from(6_705_993u32));
        let p29 = NormGraphParams::new(29).unwrap();
        assert_eq!(p29.edge_count(), BigUint::from(8u64 * 29u64.pow(6) * 871));
        assert!(density_inequality_holds(&p29));
        assert!(density_inequality_holds(&NormGraphParams::new(53).unwrap()));
    }
}
