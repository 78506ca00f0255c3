//! Equilibrium certificates.
//!
//! A profile is a Nash equilibrium exactly when each player's supported pure
//! strategies all attain that player's best-response payoff. The checks here
//! compute the best-response payoffs as exact maxima and report either a
//! clean pass or the first profitable deviation.

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, SymmetricGame};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::strategy::{eta, MixedStrategy};
use num::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    Row,
    Column,
}

impl Player {
    /// 1-based display index: row player is 1, column player is 2.
    pub fn index(&self) -> usize {
        match self {
            Player::Row => 1,
            Player::Column => 2,
        }
    }
}

/// Outcome of an equilibrium check.
///
/// `payoffs` holds each player's exact best-response payoff against the
/// profile (for an equilibrium these are the equilibrium payoffs). When the
/// check fails, `violating_index` names the first strategy, scanning players
/// in order and strategies by index, that strictly improves on the player's
/// realized payoff: a concrete profitable deviation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeCertificate {
    pub holds: bool,
    pub violating_index: Option<(Player, usize)>,
    pub payoffs: (Rational, Rational),
}

/// Expected payoff `η(z1)ᵀ M η(z2)` after normalizing both vectors.
pub fn payoff(m: &Matrix, z1: &[Rational], z2: &[Rational]) -> Result<Rational> {
    let p = eta(z1)?;
    let q = eta(z2)?;
    m.bilinear(p.weights(), q.weights())
}

fn max_entry(values: &[Rational]) -> Rational {
    values.iter().max().expect("payoff vector nonempty").clone()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// First index whose payoff strictly exceeds `realized`, if any.
fn first_improvement(payoffs: &[Rational], realized: &Rational) -> Option<usize> {
    payoffs.iter().position(|p| p > realized)
}

fn supported_all_attain(strategy: &MixedStrategy, payoffs: &[Rational], best: &Rational) -> bool {
    strategy
        .support()
        .into_iter()
        .all(|i| &payoffs[i] == best)
}

/// Check whether `(x, y)` is a Nash equilibrium of `game`.
pub fn is_nash(game: &BimatrixGame, x: &MixedStrategy, y: &MixedStrategy) -> Result<NeCertificate> {
    if x.len() != game.rows() || y.len() != game.cols() {
        return Err(Error::DimensionMismatch(format!(
            "profile ({}, {}) does not fit a {}x{} game",
            x.len(),
            y.len(),
            game.rows(),
            game.cols()
        )));
    }
    let ay = game.a().mul_vec(y.weights())?;
    let xb = game.b().vec_mul(x.weights())?;
    let pi1 = max_entry(&ay);
    let pi2 = max_entry(&xb);
    let row_ok = supported_all_attain(x, &ay, &pi1);
    let col_ok = supported_all_attain(y, &xb, &pi2);
    let holds = row_ok && col_ok;

    let violating_index = if holds {
        None
    } else {
        let realized_row = dot(x.weights(), &ay);
        let realized_col = dot(&xb, y.weights());
        first_improvement(&ay, &realized_row)
            .filter(|_| !row_ok)
            .map(|i| (Player::Row, i))
            .or_else(|| first_improvement(&xb, &realized_col).map(|j| (Player::Column, j)))
    };

    Ok(NeCertificate {
        holds,
        violating_index,
        payoffs: (pi1, pi2),
    })
}

/// Check whether `x` is a symmetric Nash equilibrium of `(A, Aᵀ)`: every
/// supported strategy of `x` best-responds to `x` itself.
pub fn is_symmetric_ne(game: &SymmetricGame, x: &MixedStrategy) -> Result<NeCertificate> {
    if x.len() != game.n() {
        return Err(Error::DimensionMismatch(format!(
            "strategy of length {} does not fit a {}-strategy symmetric game",
            x.len(),
            game.n()
        )));
    }
    let ax = game.matrix().mul_vec(x.weights())?;
    let pi = max_entry(&ax);
    let holds = supported_all_attain(x, &ax, &pi);
    let violating_index = if holds {
        None
    } else {
        let realized = dot(x.weights(), &ax);
        first_improvement(&ax, &realized).map(|i| (Player::Row, i))
    };
    Ok(NeCertificate {
        holds,
        violating_index,
        payoffs: (pi.clone(), pi),
    })
}

/// The slack `xᵀAx − π` for symmetric games with `π = max (Ax)_i`: it is
/// never positive, and it vanishes exactly at symmetric equilibria.
pub fn symmetric_slack(game: &SymmetricGame, x: &MixedStrategy) -> Result<Rational> {
    let ax = game.matrix().mul_vec(x.weights())?;
    let pi = max_entry(&ax);
    Ok(dot(x.weights(), &ax) - pi)
}

pub fn is_zero_slack(slack: &Rational) -> bool {
    slack.is_zero()
}
