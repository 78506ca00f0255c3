//! Game containers and the payoff-normalization map.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{rat, Rational};
use num::{One, Signed};

/// Two-player game in strategic form: row player receives `A`, column player
/// receives `B`. The matrices share one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    a: Matrix,
    b: Matrix,
}

impl BimatrixGame {
    pub fn new(a: Matrix, b: Matrix) -> Result<BimatrixGame> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch(
                "payoff matrices must have the same shape".into(),
            ));
        }
        Ok(BimatrixGame { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// Row-player strategy count.
    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    /// Column-player strategy count.
    pub fn cols(&self) -> usize {
        self.a.cols()
    }
}

/// Symmetric game stored by its row-player matrix `A`; the column player
/// receives `A^T`, so one square matrix determines the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricGame {
    a: Matrix,
}

impl SymmetricGame {
    pub fn new(a: Matrix) -> Result<SymmetricGame> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(
                "a symmetric game needs a square matrix".into(),
            ));
        }
        Ok(SymmetricGame { a })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn to_bimatrix(&self) -> BimatrixGame {
        BimatrixGame {
            a: self.a.clone(),
            b: self.a.transpose(),
        }
    }
}

/// The positive affine map applied to a payoff matrix:
/// `output = scale * input + shift` entrywise, with `scale > 0`.
/// Affine payoff changes preserve best responses, so they preserve the
/// equilibrium set; keeping the record lets callers undo the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTransformRecord {
    pub scale: Rational,
    pub shift: Rational,
}

impl AffineTransformRecord {
    /// Recover an original payoff value from a normalized one.
    pub fn invert(&self, normalized: &Rational) -> Rational {
        (normalized - &self.shift) / &self.scale
    }
}

/// Default ceiling for [`normalize_positive_small`].
pub fn default_cap() -> Rational {
    rat(1, 10)
}

/// Affinely rescale a matrix so every entry lands in `[cap/2, cap]`.
///
/// With `lo` and `hi` the extreme input entries, the map sends `lo` to
/// `cap/2` and `hi` to `cap`; a constant matrix maps to the constant
/// `cap/2`. Requires `cap > 0`.
pub fn normalize_positive_small(
    m: &Matrix,
    cap: &Rational,
) -> Result<(Matrix, AffineTransformRecord)> {
    if !cap.is_positive() {
        return Err(Error::Precondition("cap must be positive".into()));
    }
    let lo = m.min_entry().clone();
    let hi = m.max_entry().clone();
    if lo == hi {
        let record = AffineTransformRecord {
            scale: Rational::one(),
            shift: cap / rat(2, 1) - &lo,
        };
        let out = m.scale(&record.scale);
        let mut out2 = out;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                *out2.at_mut(i, j) += &record.shift;
            }
        }
        return Ok((out2, record));
    }
    let span = &hi - &lo;
    let scale = cap / (rat(2, 1) * &span);
    let shift = cap * (&hi - rat(2, 1) * &lo) / (rat(2, 1) * &span);
    let mut out = m.scale(&scale);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            *out.at_mut(i, j) += &shift;
        }
    }
    Ok((out, AffineTransformRecord { scale, shift }))
}
