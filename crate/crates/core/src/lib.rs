//! Exact-arithmetic toolkit for bimatrix games whose row payoff matrix has
//! rank at most one after symmetrization.
//!
//! Everything runs over arbitrary-precision rationals: payoffs, mixed
//! strategies, linear programs, and equilibrium certificates are exact, so
//! every claim the library makes can be re-checked by substitution with no
//! tolerance knobs.
//!
//! The main entry points are:
//!
//! - [`rank1::solve_rank1`] finds a symmetric equilibrium of a symmetric game
//!   `(A, Aᵀ)` when `A + Aᵀ` has rank at most one, by bisecting a scalar
//!   fixed-point problem whose evaluations are linear programs.
//! - [`enumerate`] brute-forces all equilibria of small bimatrix games by
//!   support enumeration, with exact degeneracy detection. It is the
//!   reference oracle the faster paths are tested against.
//! - [`reduction`] embeds an arbitrary bimatrix game into a symmetric game
//!   whose non-symmetric equilibria correspond exactly to ordered pairs of
//!   distinct equilibria of the source game, and provides the maps in both
//!   directions.
//! - [`imitation`] converts between symmetric equilibria of `(A, Aᵀ)` and
//!   equilibria of imitation games `(A, D)` with `D` positive diagonal.
//! - [`verify`] checks equilibrium claims and produces certificates naming a
//!   violating strategy when a claim fails.

pub mod enumerate;
pub mod error;
pub mod game;
pub mod imitation;
pub mod lp;
pub mod matrix;
pub mod rank1;
pub mod rational;
pub mod reduction;
pub mod strategy;
pub mod verify;

pub use error::{Error, Result};
pub use game::{AffineTransformRecord, BimatrixGame, SymmetricGame};
pub use matrix::Matrix;
pub use rational::Rational;
pub use strategy::{MixedStrategy, Profile};
