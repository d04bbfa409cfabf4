//! Exact finite-ring arithmetic, projective lines over finite rings, the
//! `GL₂(R)` action, chain geometries, divisible designs and their
//! constant-weight codes.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed from
//! explicit operation tables, so results are exact and deterministic: the same
//! ring description always yields the same element order, the same point ids
//! and the same block order.
//!
//! The modules build on each other bottom-up:
//!
//! * [`ring`]: ring tables, units, Jacobson radical, quotient `R/rad R`,
//!   Wedderburn–Artin signature.
//! * [`projline`]: the point set `P(R)`, the distant relation and radical
//!   parallelism.
//! * [`action`]: `GL₂(R)` generators acting on points and blocks.
//! * [`chains`]: subfield embeddings and chain geometries `Σ(K,R)`.
//! * [`designs`]: divisible-design verification, parameter calculus and the
//!   orbit construction of block sets.
//! * [`codes`]: constant-weight codes attached to divisible designs.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

pub mod action;
pub mod chains;
pub mod codes;
pub mod combin;
pub mod designs;
mod error;
pub mod projline;
pub mod ring;

pub use error::{Error, Result};

/// Default upper bound on the number of ring elements.
pub const DEFAULT_RING_CAP: usize = 4096;

/// Default upper bound on the number of blocks produced by an orbit.
pub const DEFAULT_BLOCK_CAP: usize = 1_000_000;

/// Size limits shared by the constructions in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximal ring order accepted by ring construction.
    pub ring_cap: usize,
    /// Maximal number of blocks in an orbit.
    pub block_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            ring_cap: DEFAULT_RING_CAP,
            block_cap: DEFAULT_BLOCK_CAP,
        }
    }
}
