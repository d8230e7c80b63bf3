//! Exact-arithmetic toolkit for even integral lattices and the lattice
//! invariants of moduli spaces of sheaves on K3 surfaces.
//!
//! The crate is organised in layers:
//!
//! - [`mat`]: integer matrices, Smith normal form with transforms, exact
//!   rational solvers;
//! - [`lattice`]: even integral lattices, sublattices, divisibility,
//!   saturation, orthogonal complements, and the glue/cokernel verifiers
//!   for unimodular ambients;
//! - [`discform`]: finite quadratic forms `A_L = L*/L` with values in
//!   `Q/2Z` and pairings in `Q/Z`;
//! - [`mukai`]: the extended Néron–Severi lattice `N(S)`, Mukai vectors,
//!   and per-vector moduli verdicts (existence, dimension, fineness,
//!   obstruction order, Brauer kernel data);
//! - [`bm`]: Beauville–Mukai systems over a fixed curve class, torsor
//!   classes, Tate–Shafarevich kernel orders, and the birationality
//!   criterion over elliptic K3 surfaces;
//! - [`extmukai`]: the rank-4 extended-Mukai `(1,1)`-lattices whose
//!   discriminants separate derived-equivalence classes.
//!
//! All arithmetic is arbitrary precision and exact; there are no floats
//! anywhere. Every value is immutable after construction and every
//! operation is a pure function, so the whole crate is safe to use
//! concurrently. The crate is `no_std` (with `alloc`).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bm;
pub mod discform;
pub mod error;
pub mod extmukai;
pub mod lattice;
pub mod mat;
pub mod mukai;

pub use error::{Error, Result};
pub use lattice::{standard, CokernelReport, GlueReport, IntegralLattice, Sublattice};
pub use discform::{DiscElement, FiniteQuadraticForm};
pub use mukai::{HyperbolicWitness, K3Model, ModuliReport, ModuliSpaceKind, MukaiVector};
pub use bm::{BirationalityReport, BmConfig, SectionSearch, TorsorClass};
pub use extmukai::ExtMukaiReport;
