//! Thermal entanglement and measurement-induced disturbance for the
//! two-site mixed spin (1, 1/2) Heisenberg chain
//!
//! ```text
//! H = J (S₁ˣ⊗σˣ + S₁ʸ⊗σʸ + S₁ᶻ⊗σᶻ) + B (I₃⊗σᶻ)
//! ```
//!
//! The crate is `no_std` and only needs `alloc`. It carries the whole
//! numerical pipeline: a small dense complex linear-algebra layer
//! ([`linalg`]), the physical model with both a closed-form and a numeric
//! spectrum ([`model`]), the correlation quantifiers ([`measures`]) and the
//! grid/bisection drivers used by the command-line front end ([`sweep`]).
//!
//! All 6×6 operators use the product basis
//! `|1,1⟩, |1,0⟩, |0,1⟩, |0,0⟩, |−1,1⟩, |−1,0⟩`, i.e. the row index of
//! `|x,y⟩` is `2·(1−x) + (1−y)` with `x` the qutrit `S₁ᶻ` eigenvalue and
//! `y = 1` for qubit spin-up.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem, C64};
pub use measures::CorrelationReport;
pub use model::{ModelParams, Spectrum, ThermalMode, ThermalState};
pub use sweep::{Quantity, SweepAxis, SweepResult, SweepSpec};

/// Dimension of the qutrit factor.
pub const QUTRIT_DIM: usize = 3;
/// Dimension of the qubit factor.
pub const QUBIT_DIM: usize = 2;
/// Dimension of the joint Hilbert space.
pub const DIM: usize = QUTRIT_DIM * QUBIT_DIM;
