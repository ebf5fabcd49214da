//! Continuous-time quantum walks (CTQWs) on unweighted, undirected networks.
//!
//! The walk Hamiltonian is the symmetric normalized Laplacian
//! `H = D^{-1/2} (D - A) D^{-1/2}`. Everything here is a pure function of its
//! inputs and only needs `alloc`:
//!
//! * [`graph`]: simple graphs, clustering, distances, connectivity.
//! * [`hamiltonian`]: construction of `H` from a [`Graph`].
//! * [`netgen`]: recursive triangle, ring, Newman–Watts–Strogatz, Kleinberg ring
//!   and Holme–Kim generators.
//! * [`spectral`]: dense symmetric eigensolver plus degeneracy and gap classes.
//! * [`qwalk`]: exact time evolution, transition probabilities, IPR, and their
//!   long-time means evaluated in closed form from the spectrum.
//! * [`ensemble`]: seeded multi-instantiation IPR curves.
//!
//! Node indices are 0-based in this crate. External labels (files, CLI) are
//! 1-based; [`Graph::from_labels`] is the one constructor that takes labels.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod ensemble;
pub mod graph;
pub mod hamiltonian;
pub mod matrix;
pub mod netgen;
pub mod qwalk;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hamiltonian::Hamiltonian;
pub use matrix::Matrix;
pub use spectral::{eig_sym, SpectralDecomposition, DEFAULT_TOLERANCE};
