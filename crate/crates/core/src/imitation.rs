//! Imitation games and their exchange of equilibria with symmetric games.
//!
//! An imitation game pairs a positive square matrix `A` for the row player
//! with a positive diagonal matrix for the column player, so the column
//! player is rewarded purely for matching high-probability rows. In any
//! equilibrium the column support sits inside the row player's most-likely
//! strategies, which forces the column strategy to be a symmetric equilibrium
//! of `(A, Aᵀ)`; conversely a symmetric equilibrium can always be completed
//! to an imitation equilibrium by spreading the row player uniformly over the
//! best replies. The diagonal only reweights the row player's mix, never the
//! supports, so both directions carry over to any positive diagonal.

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, SymmetricGame};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::strategy::MixedStrategy;
use crate::verify::{is_nash, is_symmetric_ne};
use num::{One, Zero};

fn check_payoff_matrix(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "imitation games need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.all_positive() {
        return Err(Error::NonPositiveMatrix);
    }
    Ok(())
}

fn check_diagonal(n: usize, diag: &[Rational]) -> Result<()> {
    if diag.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "diagonal has {} entries for {} strategies",
            diag.len(),
            n
        )));
    }
    if diag.iter().any(|d| d <= &Rational::zero()) {
        return Err(Error::NonPositiveMatrix);
    }
    Ok(())
}

/// The imitation game `(A, D)` with `D` the diagonal matrix of `diag`.
pub fn imitation_game(a: &Matrix, diag: &[Rational]) -> Result<BimatrixGame> {
    check_payoff_matrix(a)?;
    check_diagonal(a.rows(), diag)?;
    let mut d = Matrix::zeros(a.rows(), a.rows())?;
    for (i, v) in diag.iter().enumerate() {
        *d.at_mut(i, i) = v.clone();
    }
    BimatrixGame::new(a.clone(), d)
}

/// The imitation game `(A, I)`.
pub fn identity_imitation_game(a: &Matrix) -> Result<BimatrixGame> {
    imitation_game(a, &vec![Rational::one(); a.rows()])
}

/// Project an equilibrium of the imitation game `(A, I)` to the symmetric
/// game `(A, Aᵀ)`: the column strategy is itself a symmetric equilibrium.
/// The column support lies in `argmax x`, every such row is played by `x`,
/// and supported rows of `x` are best replies to `y`, so the supports of `y`
/// best-reply to `y`.
pub fn lift_to_symmetric(
    a: &Matrix,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<MixedStrategy> {
    let game = identity_imitation_game(a)?;
    if !is_nash(&game, x, y)?.holds {
        return Err(Error::NotAnEquilibrium);
    }
    let sym = SymmetricGame::new(a.clone())?;
    if !is_symmetric_ne(&sym, y)?.holds {
        return Err(Error::InternalInvariantViolation(
            "imitation equilibrium projected to a non-equilibrium column strategy".into(),
        ));
    }
    Ok(y.clone())
}

/// Reweight a row strategy from the identity imitation game to the game with
/// diagonal `diag`: `x'_i = x_i / (s · d_i)` with `s = Σ x_j / d_j`. The
/// products `x'_i d_i` are proportional to `x_i`, so the column player's
/// preference order over rows is unchanged.
pub fn rescale_for_diagonal(x: &MixedStrategy, diag: &[Rational]) -> Result<MixedStrategy> {
    check_diagonal(x.len(), diag)?;
    let s: Rational = x.weights().iter().zip(diag).map(|(xi, di)| xi / di).sum();
    let weights = x
        .weights()
        .iter()
        .zip(diag)
        .map(|(xi, di)| xi / (di * &s))
        .collect();
    MixedStrategy::new(weights)
}

/// Complete a symmetric equilibrium `y` of `(A, Aᵀ)` to an equilibrium
/// `(x, y)` of the imitation game `(A, D)`, returning `x`.
///
/// The row strategy is uniform over `argmax (Ay)` and then reweighted for the
/// diagonal. Restricting to the best replies is what makes the row side an
/// equilibrium; a support chosen merely by positive payoff would include
/// suboptimal rows whenever `Ay` is not constant.
pub fn witness_for_diagonal(
    a: &Matrix,
    y: &MixedStrategy,
    diag: &[Rational],
) -> Result<MixedStrategy> {
    check_payoff_matrix(a)?;
    check_diagonal(a.rows(), diag)?;
    let sym = SymmetricGame::new(a.clone())?;
    if !is_symmetric_ne(&sym, y)?.holds {
        return Err(Error::NotAnEquilibrium);
    }
    let ay = a.mul_vec(y.weights())?;
    let best = ay.iter().max().expect("nonempty payoff vector").clone();
    let support: Vec<usize> = (0..ay.len()).filter(|&i| ay[i] == best).collect();
    let share = crate::rational::rat(1, support.len() as i64);
    let mut weights = vec![Rational::zero(); a.rows()];
    for i in &support {
        weights[*i] = share.clone();
    }
    let uniform_on_best = MixedStrategy::new(weights)?;
    let x = rescale_for_diagonal(&uniform_on_best, diag)?;
    if !is_nash(&imitation_game(a, diag)?, &x, y)?.holds {
        return Err(Error::InternalInvariantViolation(
            "constructed imitation row strategy failed the equilibrium check".into(),
        ));
    }
    Ok(x)
}
