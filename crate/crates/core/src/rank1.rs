//! Symmetric equilibrium computation for games whose symmetrized payoff
//! matrix has rank at most one.
//!
//! Writing `A + Aᵀ = c dᵀ` and `K = A − c dᵀ/2` (skew by construction), the
//! payoffs satisfy `(Ax)_i = (Kx)_i + (dᵀx/2) c_i`. Freezing the scalar
//! `λ = dᵀx` turns the equilibrium condition into a linear program
//!
//!   maximize  (λ/2) cᵀx − π
//!   subject to  Kx + (λ/2) c ≤ π·1,  Σx = 1,  x ≥ 0,  π free
//!
//! whose optimal value is zero for every λ: averaging the constraints with
//! weights `x` kills the skew term, so the objective is never positive, and a
//! symmetric equilibrium of the frozen game attains zero. Every optimal `x`
//! is such an equilibrium, and it is an equilibrium of the original game
//! exactly when `dᵀx = λ`. The solver therefore searches for a fixed point
//! `λ ∈ F(λ)`, where `F(λ)` is the interval swept by `dᵀx` over the optimal
//! face, by exact bisection: the bracket invariant `F_hi(lo) ≥ lo` and
//! `F_hi(hi) ≤ hi` keeps a fixed point inside the bracket, and once the
//! bracket is narrower than the minimal gap between candidate fixed values
//! the unique simplest rational inside it is the answer.

use crate::error::{Error, Result};
use crate::game::SymmetricGame;
use crate::lp::{
    optimize_over_optimal_face_with, solve, LinearProgram, LpOutcome, LpStatus, Sense, VarBound,
};
use crate::matrix::Matrix;
use crate::rational::{ceil_log2, factorial, lcm_denominators, rat, simplest_in_interval, Rational};
use crate::strategy::MixedStrategy;
use crate::verify::is_symmetric_ne;
use num::{BigInt, One, Signed, Zero};
use std::collections::HashSet;

/// Factorization `A + Aᵀ = c dᵀ` together with the skew remainder
/// `K = A − c dᵀ/2`. A zero symmetrized matrix yields zero vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Decomposition {
    pub c: Vec<Rational>,
    pub d: Vec<Rational>,
    pub skew: Matrix,
}

/// A symmetric equilibrium of a rank-1 symmetric game, with the fixed
/// parameter `lambda = dᵀx` and the equilibrium payoff `xᵀAx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Solution {
    pub strategy: MixedStrategy,
    pub lambda: Rational,
    pub payoff: Rational,
    pub iterations: u64,
}

/// Factor `A + Aᵀ` as `c dᵀ`, rejecting matrices of rank two or more.
pub fn decompose_rank1(game: &SymmetricGame) -> Result<Rank1Decomposition> {
    let a = game.matrix();
    let n = game.n();
    let m = a.add(&a.transpose())?;
    if m.is_zero() {
        return Ok(Rank1Decomposition {
            c: vec![Rational::zero(); n],
            d: vec![Rational::zero(); n],
            skew: a.clone(),
        });
    }
    // A nonzero symmetric matrix with an all-zero diagonal has rank at least
    // two, so a usable pivot must exist on the diagonal.
    let Some(j) = (0..n).find(|&j| !m.at(j, j).is_zero()) else {
        return Err(Error::RankExceedsOne);
    };
    let c = m.column(j);
    let pivot = m.at(j, j).clone();
    let d: Vec<Rational> = (0..n).map(|q| m.at(j, q) / &pivot).collect();
    for p in 0..n {
        for q in 0..n {
            if *m.at(p, q) != &c[p] * &d[q] {
                return Err(Error::RankExceedsOne);
            }
        }
    }
    let skew = a.sub(&Matrix::outer(&c, &d)?.scale(&rat(1, 2)))?;
    Ok(Rank1Decomposition { c, d, skew })
}

/// The frozen-parameter program described at module level, over variables
/// `(x_0, …, x_{n−1}, π)` with `π` free.
pub fn parameterized_lp(dec: &Rank1Decomposition, lambda: &Rational) -> LinearProgram {
    let n = dec.skew.rows();
    let half = rat(1, 2);
    let mut lp = LinearProgram::new(n + 1, Sense::Maximize);
    lp.bounds[n] = VarBound::Free;
    let mut obj: Vec<Rational> = dec.c.iter().map(|ci| ci * lambda * &half).collect();
    obj.push(-Rational::one());
    lp.objective = obj;
    for i in 0..n {
        let mut row = dec.skew.row(i).to_vec();
        row.push(-Rational::one());
        let rhs = -(&dec.c[i] * lambda * &half);
        lp.push_ineq(row, rhs);
    }
    let mut sum_row = vec![Rational::one(); n];
    sum_row.push(Rational::zero());
    lp.push_eq(sum_row, Rational::one());
    lp
}

fn expect_zero_optimum(out: &LpOutcome) -> Result<()> {
    let ok = out.status == LpStatus::Optimal
        && out.objective_value.as_ref().is_some_and(|v| v.is_zero());
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariantViolation(
            "frozen-parameter program must attain optimum zero".into(),
        ))
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn d_objective(dec: &Rank1Decomposition) -> Vec<Rational> {
    let mut obj = dec.d.clone();
    obj.push(Rational::zero());
    obj
}

/// Range of `dᵀx` over the optimal face of the frozen program at one
/// parameter value, with optimal points attaining each end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub witness_lo: MixedStrategy,
    pub witness_hi: MixedStrategy,
}

/// Compute the range of `dᵀx` over the optimal face of the frozen program at
/// `lambda`.
pub fn optimal_face_range(dec: &Rank1Decomposition, lambda: &Rational) -> Result<LambdaInterval> {
    let n = dec.skew.rows();
    let lp = parameterized_lp(dec, lambda);
    let primary = solve(&lp)?;
    expect_zero_optimum(&primary)?;
    let dobj = d_objective(dec);
    let end = |out: LpOutcome| -> Result<(Rational, MixedStrategy)> {
        let invariant = |what: &str| {
            Error::InternalInvariantViolation(format!("face optimization returned no {what}"))
        };
        let value = out.objective_value.ok_or_else(|| invariant("value"))?;
        let point = out.solution.ok_or_else(|| invariant("point"))?;
        Ok((value, MixedStrategy::new(point[..n].to_vec())?))
    };
    let (lo, witness_lo) = end(optimize_over_optimal_face_with(
        &lp,
        &primary,
        &dobj,
        Sense::Minimize,
    )?)?;
    let (hi, witness_hi) = end(optimize_over_optimal_face_with(
        &lp,
        &primary,
        &dobj,
        Sense::Maximize,
    )?)?;
    Ok(LambdaInterval {
        lo,
        hi,
        witness_lo,
        witness_hi,
    })
}

/// Check that an optimal point of the frozen program at `lambda` is a
/// symmetric equilibrium of the game rebuilt from any linear form agreeing
/// with the parameter at `x`: given `vᵀx = lambda`, the point must be an
/// equilibrium of `(Z, Zᵀ)` with `Z = K + ½cvᵀ`. Taking `v = d` at a fixed
/// point recovers the original game.
pub fn check_parameter_substitution(
    dec: &Rank1Decomposition,
    lambda: &Rational,
    x: &MixedStrategy,
    v: &[Rational],
) -> Result<bool> {
    if &dot(v, x.weights()) != lambda {
        return Err(Error::Precondition(
            "substituted form must agree with the parameter at the point".into(),
        ));
    }
    let half_outer = Matrix::outer(&dec.c, v)?.scale(&rat(1, 2));
    let rebuilt = SymmetricGame::new(dec.skew.add(&half_outer)?)?;
    Ok(is_symmetric_ne(&rebuilt, x)?.holds)
}

/// Probe one parameter value: feasibility of the optimal face intersected
/// with `dᵀx = lambda` decides `lambda ∈ F(lambda)` in a single solve, since
/// the optimum of the frozen program is known to be zero. A feasible point is
/// a symmetric equilibrium of the original game.
fn try_fixed(
    game: &SymmetricGame,
    dec: &Rank1Decomposition,
    lambda: &Rational,
) -> Result<Option<MixedStrategy>> {
    let n = game.n();
    let mut lp = parameterized_lp(dec, lambda);
    let obj = std::mem::replace(&mut lp.objective, vec![Rational::zero(); n + 1]);
    lp.sense = Sense::Minimize;
    lp.push_eq(obj, Rational::zero());
    lp.push_eq(d_objective(dec), lambda.clone());
    let out = solve(&lp)?;
    match out.status {
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(Error::InternalInvariantViolation(
            "feasibility probe reported unbounded".into(),
        )),
        LpStatus::Optimal => {
            let sol = out.solution.ok_or_else(|| {
                Error::InternalInvariantViolation("optimal probe returned no point".into())
            })?;
            let x = MixedStrategy::new(sol[..n].to_vec())?;
            if !is_symmetric_ne(game, &x)?.holds {
                return Err(Error::InternalInvariantViolation(
                    "fixed-parameter witness failed the equilibrium check".into(),
                ));
            }
            Ok(Some(x))
        }
    }
}

/// If the point of an LP outcome is a symmetric equilibrium of the original
/// game, return it. Solutions of the frozen program always lie on the
/// simplex, so the strategy construction cannot fail.
fn equilibrium_candidate(game: &SymmetricGame, out: &LpOutcome) -> Result<Option<MixedStrategy>> {
    let Some(sol) = &out.solution else {
        return Ok(None);
    };
    let x = MixedStrategy::new(sol[..game.n()].to_vec())?;
    Ok(is_symmetric_ne(game, &x)?.holds.then_some(x))
}

/// Denominator bound for extreme equilibrium values of `dᵀx`. Extreme
/// equilibria are basic solutions of square subsystems built from the payoff
/// matrix and the simplex constraint, so their coordinates have denominators
/// bounded via Cramer determinants of the integerized matrix; the `dᵀx`
/// value picks up at most the least common denominator of `d` on top.
fn fixed_value_denominator_bound(game: &SymmetricGame, d: &[Rational]) -> BigInt {
    let den = lcm_denominators(game.matrix().entries());
    let den_rat = Rational::from_integer(den.clone());
    let mut m = den.max(BigInt::one());
    for e in game.matrix().entries() {
        m = m.max((e * &den_rat).to_integer().abs());
    }
    let exp = game.n() + 2;
    factorial(exp) * num::pow::pow(m + BigInt::one(), exp) * lcm_denominators(d)
}

fn finish(
    game: &SymmetricGame,
    dec: &Rank1Decomposition,
    strategy: MixedStrategy,
    iterations: u64,
) -> Result<Rank1Solution> {
    let lambda = dot(&dec.d, strategy.weights());
    let payoff = game
        .matrix()
        .bilinear(strategy.weights(), strategy.weights())?;
    Ok(Rank1Solution {
        strategy,
        lambda,
        payoff,
        iterations,
    })
}

/// Compute a symmetric equilibrium of a rank-1 symmetric game exactly.
pub fn solve_rank1(game: &SymmetricGame) -> Result<Rank1Solution> {
    let dec = decompose_rank1(game)?;
    let d_min = dec.d.iter().min().cloned().unwrap_or_else(Rational::zero);
    let d_max = dec.d.iter().max().cloned().unwrap_or_else(Rational::zero);

    if d_min == d_max {
        // Every simplex point has the same d-value, so the frozen program at
        // that value is the game itself and any optimal point is an answer.
        let lp = parameterized_lp(&dec, &d_min);
        let primary = solve(&lp)?;
        expect_zero_optimum(&primary)?;
        let x = equilibrium_candidate(game, &primary)?.ok_or_else(|| {
            Error::InternalInvariantViolation(
                "optimal point of the degenerate-direction program is not an equilibrium".into(),
            )
        })?;
        return finish(game, &dec, x, 0);
    }

    let bound = fixed_value_denominator_bound(game, &dec.d);
    let gap_den = BigInt::from(2) * &bound * &bound;
    let width_goal = Rational::new(BigInt::one(), gap_den.clone());
    let range = &d_max - &d_min;
    let max_iterations = ceil_log2(&(&range * Rational::from_integer(gap_den))) + 4;

    let (mut lo, mut hi) = (d_min, d_max);
    let mut failed: HashSet<Rational> = HashSet::new();
    let mut iterations: u64 = 0;
    let two = Rational::from_integer(2.into());
    let dobj = d_objective(&dec);

    while &hi - &lo >= width_goal {
        iterations += 1;
        if iterations > max_iterations {
            return Err(Error::InternalInvariantViolation(
                "bisection exceeded its iteration bound".into(),
            ));
        }
        let mid = (&lo + &hi) / &two;
        if let Some(x) = try_fixed(game, &dec, &mid)? {
            return finish(game, &dec, x, iterations);
        }
        failed.insert(mid.clone());

        let lp = parameterized_lp(&dec, &mid);
        let primary = solve(&lp)?;
        expect_zero_optimum(&primary)?;
        if let Some(x) = equilibrium_candidate(game, &primary)? {
            return finish(game, &dec, x, iterations);
        }
        let face_hi = optimize_over_optimal_face_with(&lp, &primary, &dobj, Sense::Maximize)?;
        let f_hi = face_hi.objective_value.clone().ok_or_else(|| {
            Error::InternalInvariantViolation("face optimization returned no value".into())
        })?;
        if let Some(x) = equilibrium_candidate(game, &face_hi)? {
            return finish(game, &dec, x, iterations);
        }
        // The probe ruled out mid ∈ F(mid), so F(mid) lies strictly on one
        // side of mid and F_hi alone determines which.
        if f_hi < mid {
            hi = mid;
        } else {
            lo = mid;
        }

        // The simplest rational in the bracket is the only candidate the
        // final reconstruction could ever produce from here; probing it now
        // terminates early whenever it is already the answer.
        let cand = simplest_in_interval(&lo, &hi);
        if !failed.contains(&cand) {
            if let Some(x) = try_fixed(game, &dec, &cand)? {
                return finish(game, &dec, x, iterations);
            }
            failed.insert(cand);
        }
    }

    let cand = simplest_in_interval(&lo, &hi);
    if let Some(x) = try_fixed(game, &dec, &cand)? {
        return finish(game, &dec, x, iterations);
    }
    Err(Error::FixedPointNotFound(format!(
        "no fixed parameter found in [{}, {}]",
        lo, hi
    )))
}
