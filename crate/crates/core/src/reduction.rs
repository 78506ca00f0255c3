//! Reduction from bimatrix equilibrium search to symmetric equilibrium
//! structure.
//!
//! A source game `(A, B)` is embedded into one symmetric game `G` on
//! `1 + m + n` strategies: strategy 0 plus one block per source-player
//! strategy set. `G` is a block-constant copy of a fixed 3×3 anchor, with the
//! rescaled `A` added on the (row-block, column-block) cells and the rescaled
//! `Bᵀ` on the mirrored cells. The anchor has a unique equilibrium and the
//! rescaling keeps the added payoffs small enough that they act as a
//! perturbation of it. Collapsing a composite strategy to its three block
//! weights reduces composite payoffs to a perturbed anchor, which makes the
//! equilibria of `(G, Gᵀ)` correspond exactly to ordered pairs of equilibria
//! of the source: symmetric ones to single source equilibria, non-symmetric
//! ones to ordered pairs of distinct source equilibria.

use crate::enumerate::enumerate_equilibria;
use crate::error::{Error, Result};
use crate::game::{
    normalize_positive_small, AffineTransformRecord, BimatrixGame, SymmetricGame,
};
use crate::matrix::{solve_linear_system, LinearSolution, Matrix};
use crate::rational::{int, rat, Rational};
use crate::strategy::{eta, MixedStrategy, Profile};
use crate::verify::{is_nash, payoff};
use num::Zero;

/// The 3×3 anchor. Its unique equilibrium is the fully mixed
/// `(2/7, 3/7, 2/7)` on both sides, and it stays unique under small
/// independent increases of the `(1,2)` and `(2,1)` entries.
pub fn anchor_matrix() -> Matrix {
    Matrix::from_int_rows(&[[0, 4, 0], [2, 0, 4], [3, 2, 0]])
}

/// The anchor with `e1` added at row 1, column 2 and `e2` added at row 2,
/// column 1.
pub fn perturbed_anchor(e1: &Rational, e2: &Rational) -> Matrix {
    let mut d = anchor_matrix();
    *d.at_mut(1, 2) += e1;
    *d.at_mut(2, 1) += e2;
    d
}

/// The symmetric embedding of a source game, together with everything needed
/// to move equilibria across the reduction.
#[derive(Clone, Debug)]
pub struct CompositeGame {
    /// The composite symmetric game `G`.
    pub game: SymmetricGame,
    /// Source strategy counts: block 1 has `m` strategies, block 2 has `n`.
    pub m: usize,
    pub n: usize,
    /// The rescaled source whose entries lie in `[cap/2, cap]`.
    pub normalized: BimatrixGame,
    pub transform_a: AffineTransformRecord,
    pub transform_b: AffineTransformRecord,
    pub cap: Rational,
}

/// Perturbation sizes extracted from a composite profile `(x, y)` with
/// `x = (x_0, a, b)` and `y = (y_0, a', b')`: each is the normalized-source
/// payoff between the facing blocks, or zero when a block is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonQuad {
    /// `η(a)ᵀ A η(b')`: perturbs the row player's collapsed game.
    pub e1: Rational,
    /// `η(a')ᵀ B η(b)`: perturbs the row player's collapsed game.
    pub e2: Rational,
    /// `η(a')ᵀ A η(b)`: perturbs the column player's collapsed game.
    pub e1_prime: Rational,
    /// `η(a)ᵀ B η(b')`: perturbs the column player's collapsed game.
    pub e2_prime: Rational,
}

/// Build the composite game. Requires `0 < cap ≤ 1/10`: the correspondence
/// argument needs the added payoffs to stay within the anchor's stability
/// margin.
pub fn build_composite(source: &BimatrixGame, cap: &Rational) -> Result<CompositeGame> {
    if !(cap > &Rational::zero() && cap <= &rat(1, 10)) {
        return Err(Error::Precondition(
            "cap must lie in (0, 1/10]".into(),
        ));
    }
    let (m, n) = (source.rows(), source.cols());
    let (na, transform_a) = normalize_positive_small(source.a(), cap)?;
    let (nb, transform_b) = normalize_positive_small(source.b(), cap)?;
    let normalized = BimatrixGame::new(na, nb)?;
    let d = anchor_matrix();
    let size = 1 + m + n;
    let block = |idx: usize| -> usize {
        if idx == 0 {
            0
        } else if idx <= m {
            1
        } else {
            2
        }
    };
    let mut g = Matrix::zeros(size, size)?;
    for r in 0..size {
        for c in 0..size {
            let mut v = d.at(block(r), block(c)).clone();
            if block(r) == 1 && block(c) == 2 {
                v += normalized.a().at(r - 1, c - 1 - m);
            }
            if block(r) == 2 && block(c) == 1 {
                v += normalized.b().at(c - 1, r - 1 - m);
            }
            *g.at_mut(r, c) = v;
        }
    }
    Ok(CompositeGame {
        game: SymmetricGame::new(g)?,
        m,
        n,
        normalized,
        transform_a,
        transform_b,
        cap: cap.clone(),
    })
}

/// Block weights `(z_0, Σ block 1, Σ block 2)` of a composite vector.
pub fn collapse(m: usize, n: usize, z: &[Rational]) -> Result<Vec<Rational>> {
    if z.len() != 1 + m + n {
        return Err(Error::DimensionMismatch(format!(
            "composite vector has length {}, expected {}",
            z.len(),
            1 + m + n
        )));
    }
    let block1: Rational = z[1..=m].iter().cloned().sum();
    let block2: Rational = z[1 + m..].iter().cloned().sum();
    Ok(vec![z[0].clone(), block1, block2])
}

fn split(m: usize, n: usize, z: &[Rational]) -> Result<(&[Rational], &[Rational])> {
    if z.len() != 1 + m + n {
        return Err(Error::DimensionMismatch(format!(
            "composite vector has length {}, expected {}",
            z.len(),
            1 + m + n
        )));
    }
    Ok((&z[1..=m], &z[1 + m..]))
}

fn block_payoff(matrix: &Matrix, z1: &[Rational], z2: &[Rational]) -> Result<Rational> {
    if z1.iter().all(Zero::is_zero) || z2.iter().all(Zero::is_zero) {
        return Ok(Rational::zero());
    }
    payoff(matrix, z1, z2)
}

/// Extract the perturbation sizes induced by a composite profile. With these,
/// the composite payoffs collapse exactly:
/// `xᵀGy = cl(x)ᵀ D[e1,e2] cl(y)` and `xᵀGᵀy = cl(x)ᵀ D[e1', e2']ᵀ cl(y)`.
pub fn epsilon_quad(
    comp: &CompositeGame,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<EpsilonQuad> {
    let (a, b) = split(comp.m, comp.n, x.weights())?;
    let (a_p, b_p) = split(comp.m, comp.n, y.weights())?;
    Ok(EpsilonQuad {
        e1: block_payoff(comp.normalized.a(), a, b_p)?,
        e2: block_payoff(comp.normalized.b(), a_p, b)?,
        e1_prime: block_payoff(comp.normalized.a(), a_p, b)?,
        e2_prime: block_payoff(comp.normalized.b(), a, b_p)?,
    })
}

/// The unique mix `v > 0` that equalizes the column payoffs of the perturbed
/// anchor `D[e, f]`, i.e. `D[e, f] · v` is constant. Exists and is positive
/// throughout the stability range of the anchor; outside it the request is
/// rejected.
pub fn equalizing_mix(e: &Rational, f: &Rational) -> Result<Vec<Rational>> {
    let sys = Matrix::from_rows(vec![
        vec![int(-2), int(4), -(int(4) + e)],
        vec![int(-3), int(2) - f, Rational::zero()],
        vec![int(1), int(1), int(1)],
    ])?;
    let rhs = [Rational::zero(), Rational::zero(), int(1)];
    match solve_linear_system(&sys, &rhs)? {
        LinearSolution::Unique(v) if v.iter().all(|c| c > &Rational::zero()) => Ok(v),
        _ => Err(Error::NotFullSupport),
    }
}

/// Solve both equalization systems of a perturbation quad at once: `v` makes
/// `D[e1', e2'] · v` constant and `w` makes `D[e1, e2] · w` constant, so
/// `(v, w)` is the unique full-support equilibrium of the bimatrix game
/// `(D[e1, e2], D[e1', e2']ᵀ)`. That equilibrium property is re-checked here.
pub fn equalizing_pair(quad: &EpsilonQuad) -> Result<(MixedStrategy, MixedStrategy)> {
    let ceiling = rat(1, 10);
    for eps in [&quad.e1, &quad.e2, &quad.e1_prime, &quad.e2_prime] {
        if eps < &Rational::zero() || eps > &ceiling {
            return Err(Error::Precondition(format!(
                "perturbation {} outside [0, 1/10]",
                eps
            )));
        }
    }
    let v = MixedStrategy::new(equalizing_mix(&quad.e1_prime, &quad.e2_prime)?)?;
    let w = MixedStrategy::new(equalizing_mix(&quad.e1, &quad.e2)?)?;
    let perturbed = BimatrixGame::new(
        perturbed_anchor(&quad.e1, &quad.e2),
        perturbed_anchor(&quad.e1_prime, &quad.e2_prime).transpose(),
    )?;
    if !is_nash(&perturbed, &v, &w)?.holds {
        return Err(Error::InternalInvariantViolation(
            "equalizing mixes failed the equilibrium check on the perturbed anchor".into(),
        ));
    }
    Ok((v, w))
}

/// Map a composite equilibrium to the ordered pair of source equilibria it
/// encodes. The input must be an equilibrium of `(G, Gᵀ)`; the returned
/// profiles are equilibria of the (normalized and hence original) source.
pub fn forward_map(
    comp: &CompositeGame,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<(Profile, Profile)> {
    let composite_bimatrix = comp.game.to_bimatrix();
    if !is_nash(&composite_bimatrix, x, y)?.holds {
        return Err(Error::NotAnEquilibrium);
    }
    let (a, b) = split(comp.m, comp.n, x.weights())?;
    let (a_p, b_p) = split(comp.m, comp.n, y.weights())?;
    let lift = |z: &[Rational]| {
        eta(z).map_err(|_| {
            Error::InternalInvariantViolation(
                "zero block in a composite equilibrium".into(),
            )
        })
    };
    let ne1 = Profile::new(lift(a)?, lift(b_p)?);
    let ne2 = Profile::new(lift(a_p)?, lift(b)?);
    for p in [&ne1, &ne2] {
        if !is_nash(&comp.normalized, &p.x, &p.y)?.holds {
            return Err(Error::InternalInvariantViolation(
                "composite equilibrium projected to a non-equilibrium of the source".into(),
            ));
        }
    }
    Ok((ne1, ne2))
}

/// Map an ordered pair of source equilibria to the composite equilibrium that
/// encodes it. Equal inputs yield the symmetric composite equilibrium of the
/// shared source equilibrium.
pub fn backward_map(comp: &CompositeGame, ne1: &Profile, ne2: &Profile) -> Result<Profile> {
    for p in [ne1, ne2] {
        if !is_nash(&comp.normalized, &p.x, &p.y)?.holds {
            return Err(Error::NotAnEquilibrium);
        }
    }
    let a = comp.normalized.a();
    let b = comp.normalized.b();
    let quad = EpsilonQuad {
        e1: a.bilinear(ne1.x.weights(), ne1.y.weights())?,
        e2: b.bilinear(ne2.x.weights(), ne2.y.weights())?,
        e1_prime: a.bilinear(ne2.x.weights(), ne2.y.weights())?,
        e2_prime: b.bilinear(ne1.x.weights(), ne1.y.weights())?,
    };
    let (v, w) = equalizing_pair(&quad)?;
    let (v, w) = (v.weights().to_vec(), w.weights().to_vec());

    let assemble = |head: &Rational,
                    w1: &Rational,
                    s1: &MixedStrategy,
                    w2: &Rational,
                    s2: &MixedStrategy|
     -> Result<MixedStrategy> {
        let mut out = Vec::with_capacity(1 + comp.m + comp.n);
        out.push(head.clone());
        out.extend(s1.weights().iter().map(|t| t * w1));
        out.extend(s2.weights().iter().map(|t| t * w2));
        MixedStrategy::new(out)
    };
    let x = assemble(&v[0], &v[1], &ne1.x, &v[2], &ne2.y)?;
    let y = assemble(&w[0], &w[1], &ne2.x, &w[2], &ne1.y)?;

    if !is_nash(&comp.game.to_bimatrix(), &x, &y)?.holds {
        return Err(Error::InternalInvariantViolation(
            "assembled composite profile failed the equilibrium check".into(),
        ));
    }
    Ok(Profile::new(x, y))
}

/// Count the non-symmetric equilibria of the composite game by exhaustive
/// enumeration, returning the count and the enumerator's degeneracy flag.
pub fn count_nonsymmetric_ne(comp: &CompositeGame) -> Result<(usize, bool)> {
    crate::enumerate::count_nonsymmetric_equilibria(&comp.game)
}

/// Outcome of checking the equilibrium-counting correspondence on one source
/// game: with `k` source equilibria the composite must have exactly
/// `k(k−1)` non-symmetric equilibria, and they must be exactly the images of
/// the ordered pairs of distinct source equilibria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingReport {
    pub source_equilibria: usize,
    pub nonsymmetric: usize,
    pub holds: bool,
}

/// Verify the counting correspondence for a source game small enough to
/// enumerate. Degenerate sources (or a degenerate composite) are rejected:
/// the count is only meaningful when both equilibrium sets are finite.
pub fn check_counting_correspondence(
    source: &BimatrixGame,
    cap: &Rational,
) -> Result<CountingReport> {
    let src = enumerate_equilibria(source)?;
    if src.degenerate {
        return Err(Error::DegenerateGame);
    }
    let k = src.equilibria.len();
    let comp = build_composite(source, cap)?;
    let comp_res = enumerate_equilibria(&comp.game.to_bimatrix())?;
    if comp_res.degenerate {
        return Err(Error::DegenerateGame);
    }
    let mut actual: Vec<Profile> = comp_res
        .equilibria
        .into_iter()
        .filter(|p| !p.is_symmetric())
        .collect();
    actual.sort();

    let mut expected: Vec<Profile> = Vec::with_capacity(k.saturating_mul(k.saturating_sub(1)));
    let mut round_trips = true;
    for (i, ne1) in src.equilibria.iter().enumerate() {
        for (j, ne2) in src.equilibria.iter().enumerate() {
            if i == j {
                continue;
            }
            let built = backward_map(&comp, ne1, ne2)?;
            let (back1, back2) = forward_map(&comp, &built.x, &built.y)?;
            round_trips &= back1 == *ne1 && back2 == *ne2;
            expected.push(built);
        }
    }
    expected.sort();
    expected.dedup();

    let holds = round_trips && actual == expected && actual.len() == k * k.saturating_sub(1);
    Ok(CountingReport {
        source_equilibria: k,
        nonsymmetric: actual.len(),
        holds,
    })
}
