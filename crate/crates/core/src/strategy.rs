//! Mixed strategies: exact points of the probability simplex.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Signed, Zero};

/// A probability vector with exact rational weights: every entry is
/// nonnegative and the entries sum to one. Construction enforces both.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl std::fmt::Debug for MixedStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<MixedStrategy> {
        if weights.is_empty() {
            return Err(Error::DimensionMismatch(
                "strategy must have at least one weight".into(),
            ));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Precondition(
                "strategy weights must be nonnegative".into(),
            ));
        }
        let total: Rational = weights.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::Precondition(format!(
                "strategy weights must sum to 1, got {total}"
            )));
        }
        Ok(MixedStrategy { weights })
    }

    pub fn uniform(n: usize) -> MixedStrategy {
        let w = Rational::new(1.into(), (n as i64).into());
        MixedStrategy {
            weights: vec![w; n],
        }
    }

    pub fn pure(n: usize, i: usize) -> MixedStrategy {
        assert!(i < n, "pure strategy index out of range");
        let mut weights = vec![Rational::zero(); n];
        weights[i] = Rational::one();
        MixedStrategy { weights }
    }

    /// Number of pure strategies; always at least one.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    /// Indices with strictly positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_full_support(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }
}

/// Normalize a nonnegative, nonzero vector to sum one.
pub fn eta(z: &[Rational]) -> Result<MixedStrategy> {
    if z.is_empty() {
        return Err(Error::DimensionMismatch(
            "cannot normalize an empty vector".into(),
        ));
    }
    if z.iter().any(|v| v.is_negative()) {
        return Err(Error::Precondition(
            "normalization requires nonnegative entries".into(),
        ));
    }
    let total: Rational = z.iter().cloned().sum();
    if total.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(MixedStrategy {
        weights: z.iter().map(|v| v / &total).collect(),
    })
}

/// An ordered pair of strategies, one per player.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Profile {
    pub x: MixedStrategy,
    pub y: MixedStrategy,
}

impl Profile {
    pub fn new(x: MixedStrategy, y: MixedStrategy) -> Profile {
        Profile { x, y }
    }

    pub fn is_symmetric(&self) -> bool {
        self.x == self.y
    }
}
