//! Schur elements of cyclotomic Hecke algebras, their essential hyperplanes, and
//! the Rouquier blocks they determine.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command line
//! live in the `rouquier-store` crate.

#![no_std]

extern crate alloc;

pub mod clifford;
pub mod coset;
pub mod cyclo;
pub mod datum;
pub mod engine;
mod fp;
pub mod group_blocks;
pub mod lattice;
pub mod partition;
pub mod schur;
