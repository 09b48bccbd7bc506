//! Counting and extracting solutions of the (constrained) number partitioning
//! problem.
//!
//! A spin configuration `S ∈ {±1}^n` assigns `a_j` to the first set when
//! `S_j = +1`. It solves the instance when `Σ a_j S_j = Δ`, with `Δ = B mod 2`
//! and `B = Σ a_j`, and (for constrained instances) `Σ S_j = C`.
//!
//! The number of solutions `n_s` is the zero-energy density of states of the
//! non-interacting Ising Hamiltonian `H = Δ − Σ a_j σ_j^z`. This crate computes
//! it several independent ways that serve as oracles for each other:
//!
//! - [`counting`]: exhaustive enumeration, the closed-form cosine-product trace
//!   sum, and a pseudo-polynomial dynamic program.
//! - [`emulator`]: a state-vector emulation of the one-step quantum algorithm,
//!   read out either from the `|0…0⟩` amplitude or from the readout qubit
//!   driven by a Toffoli AND tree.
//! - [`spectral`]: the zero-frequency content of the n-spin correlation
//!   function `C(t) = Π cos(a_j t)`.
//!
//! [`solver`] turns any exact-count backend into a partition extractor by
//! fixing spins one at a time.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod emulator;
mod error;
pub mod instance;
pub mod solver;
pub mod spectral;
mod sum;

pub use counting::{CountResult, Method, PrefixAssignment, RestrictedMethod};
pub use error::{Error, Result};
pub use instance::{DerivedParams, Instance, Spin, SpinConfig};
pub use solver::{extract_partition, ExtractionStep, ExtractionTrace};
