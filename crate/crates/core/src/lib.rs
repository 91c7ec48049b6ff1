//! Idempotent (max-plus) probability measures on finite spaces.
//!
//! A finite-support idempotent measure `μ = ⊕ λᵢ ⊙ δ_{xᵢ}` with `max λᵢ = 0`
//! acts on functions by `μ(φ) = max (λᵢ + φ(xᵢ))`. This crate provides the
//! semiring ([`maxplus`]), measures of both kinds ([`measure`]), pushforward
//! and products ([`functor`]), the log/exp conversions between the two kinds
//! ([`bridge`]), segment geometry and approximation maps ([`geometry`]),
//! grid discretization on `[0, 1]` ([`density`]), and the three-point functor
//! counterexample ([`counterexample`]).
//!
//! ```
//! use maslov::{dirac, FiniteSpace, TestFunction};
//!
//! let x = FiniteSpace::new(["a", "b"]).unwrap();
//! let phi = TestFunction::new(x.clone(), vec![2.0, 9.0]).unwrap();
//! assert_eq!(dirac(&x, "a").unwrap().evaluate(&phi).unwrap(), 2.0);
//! ```

pub mod bridge;
pub mod cli;
pub mod counterexample;
pub mod density;
pub mod error;
pub mod functor;
pub mod geometry;
pub mod json;
pub mod maxplus;
pub mod measure;
pub mod parallel;
pub mod space;

pub use error::{Error, Result};
pub use maxplus::{big_oplus, odot, oplus, MaxPlus};
pub use measure::{
    dirac, maxplus_combine, normalize_idempotent, ClassicalMeasure, IdempotentMeasure, Measure,
};
pub use space::{FiniteSpace, TestFunction};
