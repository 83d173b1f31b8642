//! Constructions of pattern-free uniform hypergraphs and the machinery to check them.
//!
//! Three constructions live here:
//!
//! - [`normgraph`]: the explicit 3-partite norm hypergraph over `F_{q^3} x B_i`, whose edges are
//!   the triples with `Norm(D1 + D2 + D3) = d1 d2 d3`.
//! - [`randalg`]: zero sets of random symmetric polynomials over `F_q`, followed by bad-sequence
//!   pruning.
//! - [`deletion`]: the random hypergraph plus edge-deletion baseline.
//!
//! [`verifier`] detects and counts copies of `K_{s,t}^{(r)}`, complete 3-partite patterns and
//! arbitrary small targets. Everything is deterministic given a seed.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod combin;
pub mod deletion;
mod error;
pub mod ffield;
pub mod hypergraph;
pub mod normgraph;
pub mod randalg;
pub mod rng;
pub mod sidon;
pub mod verifier;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use ffield::{ExtElem, ExtField, NormTable, PrimeField};
pub use hypergraph::Hypergraph;
pub use verifier::{PatternSpec, TargetGraph, Witness};
