//! Noncommutative instanton idempotents over the quantum 4-sphere.
//!
//! * [`qalgebra`]: exact normal-form arithmetic in O(SU_q(2)) at generic `q`.
//! * [`ringmat`]: matrices over an abstract ring, the Whitehead lift and the
//!   Milnor patching idempotent.
//! * [`bspace`]: the piecewise-polynomial fibre product `B = B₀ ×_H B₁`, the
//!   lifts of `Uⁿ` and the idempotents `pₙ`, with verification certificates.
//! * [`fredholm`]: truncated representation, Fredholm-module Chern pairings and
//!   the classical winding degree.

pub mod bspace;
pub mod error;
pub mod fredholm;
pub mod laurent;
pub mod qalgebra;
pub mod rational;
pub mod ring;
pub mod ringmat;
pub mod sum;

pub use bspace::{BPoly, Certificate, Piecewise, QMode};
pub use error::{Error, Result};
pub use laurent::QLaurent;
pub use qalgebra::{Generator, HElement, Pbw};
pub use rational::Rational;
pub use ring::{HAlgebra, Integers, QAlgebra, Ring, SpecializedAlgebra};
pub use ringmat::{milnor_block, milnor_block_via_lift, whitehead_lift, RingMatrix};
