//! Exhaustive equilibrium enumeration for small bimatrix games.
//!
//! Every pair of candidate supports is examined in a fixed order. For a
//! support pair to carry an equilibrium, each player's strategy must make the
//! opponent indifferent across the opponent's support while no strategy
//! outside that support does better. Each side of that condition is a small
//! polytope; when the defining equality system pins the side down to a point
//! the point is checked directly, otherwise exact lexicographic optimization
//! finds the extreme representatives and detects continua of equilibria.
//!
//! The enumeration is intended as a ground-truth oracle for games small
//! enough to afford it, so the dimensions are hard-capped.

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, SymmetricGame};
use crate::lp::{solve, LinearProgram, LpStatus, Sense, VarBound};
use crate::matrix::{solve_linear_system, LinearSolution, Matrix};
use crate::rational::Rational;
use crate::strategy::{MixedStrategy, Profile};
use crate::verify::is_nash;
use num::{One, Zero};

/// Largest per-player strategy count accepted by the enumerator.
pub const SUPPORT_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Sorted, deduplicated equilibria whose supports exactly match the
    /// support pair they were discovered under.
    pub equilibria: Vec<Profile>,
    /// True when some support pair admits a continuum of equilibria, or some
    /// listed equilibrium has more pure best responses against it than the
    /// corresponding support size.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricEnumerationResult {
    pub equilibria: Vec<MixedStrategy>,
    pub degenerate: bool,
}

/// One side of a support pair: the lexicographically smallest solution and
/// whether it is the only solution.
struct SideOutcome {
    lo: Vec<Rational>,
    unique: bool,
}

/// All nonempty subsets of `0..n` as sorted index lists, ordered by size and
/// then lexicographically.
fn subsets_ordered(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    out
}

fn scatter(dim: usize, support: &[usize], values: &[Rational]) -> Vec<Rational> {
    let mut full = vec![Rational::zero(); dim];
    for (slot, v) in support.iter().zip(values) {
        full[*slot] = v.clone();
    }
    full
}

fn argmax_count(values: &[Rational]) -> usize {
    let best = values.iter().max().expect("nonempty payoff vector");
    values.iter().filter(|v| *v == best).count()
}

/// Region for one side of the pair, over variables `(z_{own}, pi)`:
/// the strategies in `opp` all receive the common payoff `pi` against `z`
/// and every other opponent strategy receives at most `pi`.
fn side_program(m: &Matrix, own: &[usize], opp: &[usize]) -> LinearProgram {
    let k = own.len();
    let mut lp = LinearProgram::new(k + 1, Sense::Minimize);
    lp.bounds[k] = VarBound::Free;
    let payoff_row = |j: usize| -> Vec<Rational> {
        let mut row: Vec<Rational> = own.iter().map(|&i| m.at(i, j).clone()).collect();
        row.push(-Rational::one());
        row
    };
    for &j in opp {
        lp.push_eq(payoff_row(j), Rational::zero());
    }
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::zero());
    lp.push_eq(sum_row, Rational::one());
    for j in 0..m.cols() {
        if !opp.contains(&j) {
            lp.push_ineq(payoff_row(j), Rational::zero());
        }
    }
    lp
}

/// Lexicographic extreme of the region over the first `k` coordinates.
/// `None` means the region is empty.
fn lex_extreme(base: &LinearProgram, k: usize, sense: Sense) -> Result<Option<Vec<Rational>>> {
    let mut lp = base.clone();
    lp.sense = sense;
    let mut fixed = Vec::with_capacity(k);
    for t in 0..k {
        let mut obj = vec![Rational::zero(); lp.num_vars()];
        obj[t] = Rational::one();
        lp.objective = obj.clone();
        let outcome = solve(&lp)?;
        match outcome.status {
            LpStatus::Infeasible if t == 0 => return Ok(None),
            LpStatus::Infeasible => {
                return Err(Error::InternalInvariantViolation(
                    "optimal face lost feasibility during lexicographic refinement".into(),
                ))
            }
            LpStatus::Unbounded => {
                return Err(Error::InternalInvariantViolation(
                    "bounded coordinate reported unbounded".into(),
                ))
            }
            LpStatus::Optimal => {
                let v = outcome
                    .objective_value
                    .ok_or_else(|| Error::InternalInvariantViolation("optimal without value".into()))?;
                lp.push_eq(obj, v.clone());
                fixed.push(v);
            }
        }
    }
    Ok(Some(fixed))
}

/// Solve one side of a support pair. `m` is own-strategies by
/// opponent-strategies; for the column player pass the transposed payoff
/// matrix.
fn solve_side(m: &Matrix, own: &[usize], opp: &[usize]) -> Result<Option<SideOutcome>> {
    let k = own.len();
    // Equality system over (z_{own}, pi): indifference across `opp`, total
    // weight one.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(opp.len() + 1);
    let mut rhs: Vec<Rational> = Vec::with_capacity(opp.len() + 1);
    for &j in opp {
        let mut row: Vec<Rational> = own.iter().map(|&i| m.at(i, j).clone()).collect();
        row.push(-Rational::one());
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::zero());
    rows.push(sum_row);
    rhs.push(Rational::one());
    let system = Matrix::from_rows(rows)?;

    match solve_linear_system(&system, &rhs)? {
        LinearSolution::Inconsistent => Ok(None),
        LinearSolution::Unique(sol) => {
            let (z, pi) = (&sol[..k], &sol[k]);
            if z.iter().any(|v| v < &Rational::zero()) {
                return Ok(None);
            }
            for j in 0..m.cols() {
                if !opp.contains(&j) {
                    let won: Rational = own.iter().zip(z).map(|(&i, v)| m.at(i, j) * v).sum();
                    if &won > pi {
                        return Ok(None);
                    }
                }
            }
            Ok(Some(SideOutcome {
                lo: scatter(m.rows(), own, z),
                unique: true,
            }))
        }
        LinearSolution::Underdetermined => {
            let lp = side_program(m, own, opp);
            let Some(lo) = lex_extreme(&lp, k, Sense::Minimize)? else {
                return Ok(None);
            };
            let hi = lex_extreme(&lp, k, Sense::Maximize)?.ok_or_else(|| {
                Error::InternalInvariantViolation("region nonempty for min but empty for max".into())
            })?;
            Ok(Some(SideOutcome {
                unique: lo == hi,
                lo: scatter(m.rows(), own, &lo),
            }))
        }
    }
}

/// Enumerate equilibria of a bimatrix game by exhausting support pairs.
pub fn enumerate_equilibria(game: &BimatrixGame) -> Result<EnumerationResult> {
    let (m, n) = (game.rows(), game.cols());
    if m > SUPPORT_BOUND || n > SUPPORT_BOUND {
        return Err(Error::TooLarge {
            rows: m,
            cols: n,
            bound: SUPPORT_BOUND,
        });
    }
    let at = game.a().transpose();
    let row_supports = subsets_ordered(m);
    let col_supports = subsets_ordered(n);
    let mut pairs: Vec<(&Vec<usize>, &Vec<usize>)> = Vec::new();
    for s1 in &row_supports {
        for s2 in &col_supports {
            pairs.push((s1, s2));
        }
    }
    pairs.sort_by_key(|(s1, s2)| (s1.len() + s2.len(), (*s1).clone(), (*s2).clone()));

    let mut degenerate = false;
    let mut found: Vec<Profile> = Vec::new();
    for (s1, s2) in pairs {
        let Some(x_side) = solve_side(game.b(), s1, s2)? else {
            continue;
        };
        let Some(y_side) = solve_side(&at, s2, s1)? else {
            continue;
        };
        if !x_side.unique || !y_side.unique {
            degenerate = true;
        }
        let x = MixedStrategy::new(x_side.lo)?;
        let y = MixedStrategy::new(y_side.lo)?;
        if x.support() != *s1 || y.support() != *s2 {
            continue;
        }
        let cert = is_nash(game, &x, &y)?;
        if !cert.holds {
            return Err(Error::InternalInvariantViolation(
                "support region produced a non-equilibrium point".into(),
            ));
        }
        let ay = game.a().mul_vec(y.weights())?;
        let xb = game.b().vec_mul(x.weights())?;
        if argmax_count(&xb) > s1.len() || argmax_count(&ay) > s2.len() {
            degenerate = true;
        }
        found.push(Profile::new(x, y));
    }
    found.sort();
    found.dedup();
    Ok(EnumerationResult {
        equilibria: found,
        degenerate,
    })
}

/// Enumerate the symmetric equilibria of a symmetric game: the equilibria of
/// `(A, Aᵀ)` in which both players use the same strategy.
pub fn enumerate_symmetric_equilibria(game: &SymmetricGame) -> Result<SymmetricEnumerationResult> {
    let res = enumerate_equilibria(&game.to_bimatrix())?;
    let equilibria = res
        .equilibria
        .into_iter()
        .filter(Profile::is_symmetric)
        .map(|p| p.x)
        .collect();
    Ok(SymmetricEnumerationResult {
        equilibria,
        degenerate: res.degenerate,
    })
}

/// Count the equilibria of `(A, Aᵀ)` whose two sides differ, along with the
/// enumerator's degeneracy flag.
pub fn count_nonsymmetric_equilibria(game: &SymmetricGame) -> Result<(usize, bool)> {
    let res = enumerate_equilibria(&game.to_bimatrix())?;
    let count = res.equilibria.iter().filter(|p| !p.is_symmetric()).count();
    Ok((count, res.degenerate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn game(a: Matrix, b: Matrix) -> BimatrixGame {
        BimatrixGame::new(a, b).unwrap()
    }

    fn strat(w: &[Rational]) -> MixedStrategy {
        MixedStrategy::new(w.to_vec()).unwrap()
    }

    #[test]
    fn subsets_are_ordered_by_size_then_lexicographically() {
        assert_eq!(
            subsets_ordered(3),
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn matching_pennies_has_the_unique_mixed_equilibrium() {
        let a = Matrix::from_int_rows(&[[1, -1], [-1, 1]]);
        let g = game(a.clone(), a.scale(&int(-1)));
        let res = enumerate_equilibria(&g).unwrap();
        assert!(!res.degenerate);
        assert_eq!(res.equilibria.len(), 1);
        let u = MixedStrategy::uniform(2);
        assert_eq!(res.equilibria[0], Profile::new(u.clone(), u));
    }

    #[test]
    fn battle_of_the_sexes_has_three_equilibria() {
        let g = game(
            Matrix::from_int_rows(&[[2, 0], [0, 1]]),
            Matrix::from_int_rows(&[[1, 0], [0, 2]]),
        );
        let res = enumerate_equilibria(&g).unwrap();
        assert!(!res.degenerate);
        let expected = vec![
            Profile::new(strat(&[int(0), int(1)]), strat(&[int(0), int(1)])),
            Profile::new(
                strat(&[rat(2, 3), rat(1, 3)]),
                strat(&[rat(1, 3), rat(2, 3)]),
            ),
            Profile::new(strat(&[int(1), int(0)]), strat(&[int(1), int(0)])),
        ];
        assert_eq!(res.equilibria, expected);
    }

    #[test]
    fn zero_sum_two_by_three_has_unique_equilibrium_off_the_third_column() {
        let a = Matrix::from_int_rows(&[[1, -1, 2], [-1, 1, 0]]);
        let g = game(a.clone(), a.scale(&int(-1)));
        let res = enumerate_equilibria(&g).unwrap();
        assert!(!res.degenerate);
        assert_eq!(res.equilibria.len(), 1);
        assert_eq!(
            res.equilibria[0],
            Profile::new(
                MixedStrategy::uniform(2),
                strat(&[rat(1, 2), rat(1, 2), int(0)]),
            )
        );
    }

    #[test]
    fn all_zero_game_lists_pure_profiles_and_flags_degeneracy() {
        let z = Matrix::zeros(2, 2).unwrap();
        let g = game(z.clone(), z);
        let res = enumerate_equilibria(&g).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.equilibria.len(), 4);
        for p in &res.equilibria {
            assert_eq!(p.x.support().len(), 1);
            assert_eq!(p.y.support().len(), 1);
        }
    }

    #[test]
    fn indifferent_column_player_yields_continuum_flag_with_pure_witnesses() {
        let g = game(Matrix::from_int_rows(&[[1, 1]]), Matrix::zeros(1, 2).unwrap());
        let res = enumerate_equilibria(&g).unwrap();
        assert!(res.degenerate);
        assert_eq!(
            res.equilibria,
            vec![
                Profile::new(strat(&[int(1)]), strat(&[int(0), int(1)])),
                Profile::new(strat(&[int(1)]), strat(&[int(1), int(0)])),
            ]
        );
    }

    #[test]
    fn dominance_solvable_game_has_single_pure_equilibrium() {
        let g = game(
            Matrix::from_int_rows(&[[3, 0], [5, 1]]),
            Matrix::from_int_rows(&[[3, 5], [0, 1]]),
        );
        let res = enumerate_equilibria(&g).unwrap();
        assert!(!res.degenerate);
        assert_eq!(
            res.equilibria,
            vec![Profile::new(
                strat(&[int(0), int(1)]),
                strat(&[int(0), int(1)]),
            )]
        );
    }

    #[test]
    fn symmetric_enumeration_filters_to_symmetric_profiles() {
        let rps = SymmetricGame::new(Matrix::from_int_rows(&[[0, -1, 1], [1, 0, -1], [-1, 1, 0]]))
            .unwrap();
        let res = enumerate_symmetric_equilibria(&rps).unwrap();
        assert!(!res.degenerate);
        assert_eq!(res.equilibria, vec![MixedStrategy::uniform(3)]);

        let gadget =
            SymmetricGame::new(Matrix::from_int_rows(&[[0, 4, 0], [2, 0, 4], [3, 2, 0]])).unwrap();
        let res = enumerate_symmetric_equilibria(&gadget).unwrap();
        assert_eq!(
            res.equilibria,
            vec![strat(&[rat(2, 7), rat(3, 7), rat(2, 7)])]
        );
    }

    #[test]
    fn symmetric_filter_drops_asymmetric_equilibria_of_anticoordination() {
        let anti = SymmetricGame::new(Matrix::from_int_rows(&[[0, 1], [1, 0]])).unwrap();
        let all = enumerate_equilibria(&anti.to_bimatrix()).unwrap();
        assert_eq!(all.equilibria.len(), 3);
        let sym = enumerate_symmetric_equilibria(&anti).unwrap();
        assert_eq!(sym.equilibria, vec![MixedStrategy::uniform(2)]);
        assert_eq!(count_nonsymmetric_equilibria(&anti).unwrap(), (2, false));
    }

    #[test]
    fn three_strategy_gadget_has_no_nonsymmetric_equilibria() {
        let g =
            SymmetricGame::new(Matrix::from_int_rows(&[[0, 4, 0], [2, 0, 4], [3, 2, 0]])).unwrap();
        assert_eq!(count_nonsymmetric_equilibria(&g).unwrap(), (0, false));
    }

    #[test]
    fn oversized_games_are_rejected() {
        let g = game(Matrix::zeros(9, 2).unwrap(), Matrix::zeros(9, 2).unwrap());
        assert_eq!(
            enumerate_equilibria(&g).unwrap_err(),
            Error::TooLarge {
                rows: 9,
                cols: 2,
                bound: SUPPORT_BOUND,
            }
        );
    }
}
