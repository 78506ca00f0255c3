//! End-to-end acceptance checks, one test per criterion. Every check is
//! exact; each prints a labeled pass/fail line (visible with `--nocapture`)
//! and enforces its own wall-clock budget. A process-wide lock keeps the
//! timings honest under the parallel test runner.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Mutex;
use std::time::{Duration, Instant};
use symgame::enumerate::{enumerate_equilibria, enumerate_symmetric_equilibria};
use symgame::game::{default_cap, BimatrixGame, SymmetricGame};
use symgame::imitation::{identity_imitation_game, imitation_game, lift_to_symmetric, rescale_for_diagonal, witness_for_diagonal};
use symgame::lp::{solve, LpStatus};
use symgame::matrix::Matrix;
use symgame::rank1::{
    check_parameter_substitution, decompose_rank1, optimal_face_range, parameterized_lp,
    solve_rank1,
};
use symgame::rational::{fmt_rational, int, rat, Rational};
use symgame::reduction::{
    anchor_matrix, backward_map, build_composite, check_counting_correspondence, collapse,
    count_nonsymmetric_ne, epsilon_quad, equalizing_pair, forward_map, perturbed_anchor,
    EpsilonQuad,
};
use symgame::strategy::{MixedStrategy, Profile};
use symgame::verify::{is_nash, is_symmetric_ne};
use symgame::Error;

static SEQUENTIAL: Mutex<()> = Mutex::new(());

fn criterion(name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let guard = SEQUENTIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    drop(guard);
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("[PASS] {name} ({elapsed:.2?})");
        }
        Ok(()) => {
            println!("[FAIL] {name}: over time budget {budget:?} (took {elapsed:.2?})");
            panic!("{name} exceeded its time budget");
        }
        Err(msg) => {
            println!("[FAIL] {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn strat(weights: &[Rational]) -> MixedStrategy {
    MixedStrategy::new(weights.to_vec()).expect("simplex weights")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in (0, 1/10]: k/(10 m) with 1 ≤ k ≤ m.
fn small_perturbation(rng: &mut ChaCha8Rng) -> Rational {
    let m = rng.random_range(1..=20i64);
    let k = rng.random_range(1..=m);
    rat(k, 10 * m)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rat(rng.random_range(-3..=3), rng.random_range(1..=2)))
                .collect()
        })
        .collect();
    Matrix::from_rows(data).expect("rectangular data")
}

fn random_positive_simplex(rng: &mut ChaCha8Rng, len: usize) -> MixedStrategy {
    let raw: Vec<Rational> = (0..len)
        .map(|_| rat(rng.random_range(1..=6), rng.random_range(1..=4)))
        .collect();
    let total: Rational = raw.iter().sum();
    strat(&raw.iter().map(|t| t / &total).collect::<Vec<_>>())
}

#[test]
fn criterion_01_anchor_has_exactly_its_known_equilibrium() {
    criterion(
        "criterion 1: anchor game has the unique equilibrium (2/7, 3/7, 2/7)",
        Duration::from_secs(1),
        || {
            let anchor = SymmetricGame::new(anchor_matrix()).map_err(|e| e.to_string())?;
            let res = enumerate_symmetric_equilibria(&anchor).map_err(|e| e.to_string())?;
            ensure!(!res.degenerate, "anchor reported degenerate");
            let expected = strat(&[rat(2, 7), rat(3, 7), rat(2, 7)]);
            ensure!(
                res.equilibria == vec![expected.clone()],
                "symmetric equilibria were {:?}",
                res.equilibria
            );
            let all = enumerate_equilibria(&anchor.to_bimatrix()).map_err(|e| e.to_string())?;
            ensure!(
                all.equilibria == vec![Profile::new(expected.clone(), expected)],
                "full enumeration found {} profiles",
                all.equilibria.len()
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_02_perturbed_anchor_sweep_matches_closed_form() {
    criterion(
        "criterion 2: 50 perturbed anchors have one full-support equilibrium matching the closed form",
        Duration::from_secs(10),
        || {
            let mut r = rng(0x5eed_0002);
            for case in 0..50 {
                let quad = EpsilonQuad {
                    e1: small_perturbation(&mut r),
                    e2: small_perturbation(&mut r),
                    e1_prime: small_perturbation(&mut r),
                    e2_prime: small_perturbation(&mut r),
                };
                let game = BimatrixGame::new(
                    perturbed_anchor(&quad.e1, &quad.e2),
                    perturbed_anchor(&quad.e1_prime, &quad.e2_prime).transpose(),
                )
                .map_err(|e| e.to_string())?;
                let res = enumerate_equilibria(&game).map_err(|e| e.to_string())?;
                ensure!(!res.degenerate, "case {case}: degenerate perturbed game");
                ensure!(
                    res.equilibria.len() == 1,
                    "case {case}: found {} equilibria",
                    res.equilibria.len()
                );
                let only = &res.equilibria[0];
                ensure!(
                    only.x.is_full_support() && only.y.is_full_support(),
                    "case {case}: equilibrium not full support"
                );
                let (v, w) = equalizing_pair(&quad).map_err(|e| e.to_string())?;
                ensure!(
                    *only == Profile::new(v, w),
                    "case {case}: oracle equilibrium differs from closed form"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_payoff_identity_on_random_composites() {
    criterion(
        "criterion 3: 200 block-positive profiles satisfy both collapse payoff identities",
        Duration::from_secs(10),
        || {
            let mut r = rng(0x5eed_0003);
            let mut sources = Vec::new();
            for _ in 0..4 {
                sources.push((2usize, 2usize));
                sources.push((2usize, 3usize));
            }
            let mut checked = 0usize;
            for (case, (m, n)) in sources.into_iter().enumerate() {
                let source = BimatrixGame::new(
                    random_matrix(&mut r, m, n),
                    random_matrix(&mut r, m, n),
                )
                .map_err(|e| e.to_string())?;
                let comp = build_composite(&source, &default_cap()).map_err(|e| e.to_string())?;
                let g = comp.game.matrix();
                let gt = g.transpose();
                for _ in 0..25 {
                    let x = random_positive_simplex(&mut r, 1 + m + n);
                    let y = random_positive_simplex(&mut r, 1 + m + n);
                    let quad = epsilon_quad(&comp, &x, &y).map_err(|e| e.to_string())?;
                    let cx = collapse(m, n, x.weights()).map_err(|e| e.to_string())?;
                    let cy = collapse(m, n, y.weights()).map_err(|e| e.to_string())?;
                    let lhs_row = g.bilinear(x.weights(), y.weights()).map_err(|e| e.to_string())?;
                    let rhs_row = perturbed_anchor(&quad.e1, &quad.e2)
                        .bilinear(&cx, &cy)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        lhs_row == rhs_row,
                        "source {case}: row identity residual {}",
                        fmt_rational(&(lhs_row - rhs_row))
                    );
                    let lhs_col = gt.bilinear(x.weights(), y.weights()).map_err(|e| e.to_string())?;
                    let rhs_col = perturbed_anchor(&quad.e1_prime, &quad.e2_prime)
                        .transpose()
                        .bilinear(&cx, &cy)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        lhs_col == rhs_col,
                        "source {case}: column identity residual {}",
                        fmt_rational(&(lhs_col - rhs_col))
                    );
                    checked += 1;
                }
            }
            ensure!(checked == 200, "checked {checked} profiles instead of 200");
            Ok(())
        },
    );
}

#[test]
fn criterion_04_composite_nonsymmetric_counts_for_known_sources() {
    criterion(
        "criterion 4: matching-pennies composite has 0 non-symmetric equilibria, coordination has some",
        Duration::from_secs(30),
        || {
            let pennies = BimatrixGame::new(
                Matrix::from_int_rows(&[[1, -1], [-1, 1]]),
                Matrix::from_int_rows(&[[-1, 1], [1, -1]]),
            )
            .map_err(|e| e.to_string())?;
            let comp = build_composite(&pennies, &default_cap()).map_err(|e| e.to_string())?;
            let (count, degenerate) = count_nonsymmetric_ne(&comp).map_err(|e| e.to_string())?;
            ensure!(!degenerate, "matching-pennies composite degenerate");
            ensure!(count == 0, "matching-pennies composite had {count} non-symmetric equilibria");

            let coordination = BimatrixGame::new(
                Matrix::identity(2).map_err(|e| e.to_string())?,
                Matrix::identity(2).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let comp = build_composite(&coordination, &default_cap()).map_err(|e| e.to_string())?;
            let (count, degenerate) = count_nonsymmetric_ne(&comp).map_err(|e| e.to_string())?;
            ensure!(!degenerate, "coordination composite degenerate");
            ensure!(count >= 1, "coordination composite had no non-symmetric equilibria");
            Ok(())
        },
    );
}

/// Nondegenerate 2×2 sources with 1 or 3 equilibria. A 2×2 game with exactly
/// 2 equilibria is necessarily degenerate (nondegenerate games have an odd
/// number), so 1 and 3 are the only nondegenerate counts here.
fn counting_corpus() -> Vec<(&'static str, BimatrixGame, usize)> {
    vec![
        (
            "matching pennies",
            BimatrixGame::new(
                Matrix::from_int_rows(&[[1, -1], [-1, 1]]),
                Matrix::from_int_rows(&[[-1, 1], [1, -1]]),
            )
            .unwrap(),
            1,
        ),
        (
            "dominance solvable",
            BimatrixGame::new(
                Matrix::from_int_rows(&[[3, 0], [5, 1]]),
                Matrix::from_int_rows(&[[3, 5], [0, 1]]),
            )
            .unwrap(),
            1,
        ),
        (
            "battle of sexes",
            BimatrixGame::new(
                Matrix::from_int_rows(&[[2, 0], [0, 1]]),
                Matrix::from_int_rows(&[[1, 0], [0, 2]]),
            )
            .unwrap(),
            3,
        ),
        (
            "coordination",
            BimatrixGame::new(Matrix::identity(2).unwrap(), Matrix::identity(2).unwrap())
                .unwrap(),
            3,
        ),
        (
            "hawk dove",
            BimatrixGame::new(
                Matrix::from_int_rows(&[[0, 3], [1, 2]]),
                Matrix::from_int_rows(&[[0, 1], [3, 2]]),
            )
            .unwrap(),
            3,
        ),
    ]
}

#[test]
fn criterion_05_counting_correspondence_on_two_by_two_corpus() {
    criterion(
        "criterion 5: composite non-symmetric count is k(k-1) with a verified bijection",
        Duration::from_secs(60),
        || {
            for (name, source, k) in counting_corpus() {
                let report = check_counting_correspondence(&source, &default_cap())
                    .map_err(|e| format!("{name}: {e}"))?;
                ensure!(
                    report.source_equilibria == k,
                    "{name}: oracle found {} source equilibria, expected {k}",
                    report.source_equilibria
                );
                ensure!(
                    report.nonsymmetric == k * (k - 1),
                    "{name}: composite had {} non-symmetric equilibria, expected {}",
                    report.nonsymmetric,
                    k * (k - 1)
                );
                ensure!(report.holds, "{name}: bijection table mismatch");
            }
            let degenerate_source = BimatrixGame::new(
                Matrix::zeros(2, 2).map_err(|e| e.to_string())?,
                Matrix::zeros(2, 2).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            match check_counting_correspondence(&degenerate_source, &default_cap()) {
                Err(Error::DegenerateGame) => Ok(()),
                other => Err(format!("zero game: expected DegenerateGame, got {other:?}")),
            }
        },
    );
}

#[test]
fn criterion_06_reduction_round_trips_both_directions() {
    criterion(
        "criterion 6: forward/backward maps are mutually inverse on the corpus",
        Duration::from_secs(60),
        || {
            for (name, source, _) in counting_corpus() {
                let comp = build_composite(&source, &default_cap()).map_err(|e| e.to_string())?;
                let src = enumerate_equilibria(&comp.normalized).map_err(|e| e.to_string())?;
                for (i, ne1) in src.equilibria.iter().enumerate() {
                    for (j, ne2) in src.equilibria.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let built = backward_map(&comp, ne1, ne2)
                            .map_err(|e| format!("{name}: backward failed: {e}"))?;
                        let (p, q) = forward_map(&comp, &built.x, &built.y)
                            .map_err(|e| format!("{name}: forward failed: {e}"))?;
                        ensure!(
                            p == *ne1 && q == *ne2,
                            "{name}: forward(backward(pair {i},{j})) differed"
                        );
                    }
                }
                let all = enumerate_equilibria(&comp.game.to_bimatrix())
                    .map_err(|e| e.to_string())?;
                for profile in all.equilibria.iter().filter(|p| !p.is_symmetric()) {
                    let (p, q) = forward_map(&comp, &profile.x, &profile.y)
                        .map_err(|e| format!("{name}: forward failed: {e}"))?;
                    let rebuilt = backward_map(&comp, &p, &q)
                        .map_err(|e| format!("{name}: backward failed: {e}"))?;
                    ensure!(
                        rebuilt == *profile,
                        "{name}: backward(forward(ne)) differed"
                    );
                }
            }
            Ok(())
        },
    );
}

/// Instances `A = K + ½cdᵀ` with integer skew `K` and integer `c = αu`,
/// `d = βu` sharing a direction, entries within [−5, 5]. Parallel `c` and `d`
/// are forced: `A + Aᵀ = cdᵀ` must be symmetric, so independent draws would
/// make the symmetrized matrix rank 2.
fn random_rank1_game(r: &mut ChaCha8Rng, n: usize) -> SymmetricGame {
    let mut u: Vec<i64> = (0..n).map(|_| r.random_range(-2..=2)).collect();
    if u.iter().all(|&t| t == 0) {
        u[0] = 1;
    }
    let alpha = r.random_range(-2..=2i64);
    let beta = r.random_range(-2..=2i64);
    let c: Vec<Rational> = u.iter().map(|&t| int(alpha * t)).collect();
    let d: Vec<Rational> = u.iter().map(|&t| int(beta * t)).collect();
    let mut a = Matrix::outer(&c, &d).unwrap().scale(&rat(1, 2));
    for i in 0..n {
        for j in (i + 1)..n {
            let k = int(r.random_range(-5..=5));
            *a.at_mut(i, j) += &k;
            *a.at_mut(j, i) -= &k;
        }
    }
    SymmetricGame::new(a).unwrap()
}

#[test]
fn criterion_07_rank1_solver_agrees_with_the_oracle() {
    criterion(
        "criterion 7: 100 random rank-1 games solved exactly and confirmed by enumeration",
        Duration::from_secs(120),
        || {
            let mut r = rng(0x5eed_0007);
            let mut case = 0usize;
            for round in 0..25 {
                for n in 2..=5usize {
                    case += 1;
                    let game = random_rank1_game(&mut r, n);
                    let dec = decompose_rank1(&game)
                        .map_err(|e| format!("case {case} (round {round}, n={n}): {e}"))?;
                    let sol = solve_rank1(&game)
                        .map_err(|e| format!("case {case} (round {round}, n={n}): {e}"))?;
                    let cert = is_symmetric_ne(&game, &sol.strategy).map_err(|e| e.to_string())?;
                    ensure!(
                        cert.holds,
                        "case {case}: solver output failed the equilibrium check"
                    );
                    let dtx: Rational = dec
                        .d
                        .iter()
                        .zip(sol.strategy.weights())
                        .map(|(a, b)| a * b)
                        .sum();
                    ensure!(
                        dtx == sol.lambda,
                        "case {case}: dᵀx = {} but lambda = {}",
                        fmt_rational(&dtx),
                        fmt_rational(&sol.lambda)
                    );
                    let oracle = enumerate_symmetric_equilibria(&game)
                        .map_err(|e| format!("case {case}: oracle: {e}"))?;
                    if !oracle.degenerate {
                        ensure!(
                            oracle.equilibria.contains(&sol.strategy),
                            "case {case}: solver output missing from the oracle list"
                        );
                    }
                }
            }
            ensure!(case == 100, "ran {case} cases instead of 100");
            Ok(())
        },
    );
}

#[test]
fn criterion_08_frozen_program_property_suite() {
    criterion(
        "criterion 8: frozen-parameter program invariants hold on sampled games",
        Duration::from_secs(30),
        || {
            let mut r = rng(0x5eed_0008);
            for case in 0..10 {
                let n = 2 + (case % 3);
                let game = random_rank1_game(&mut r, n);
                let dec = decompose_rank1(&game).map_err(|e| e.to_string())?;

                let skew_t = dec.skew.transpose();
                for i in 0..n {
                    for j in 0..n {
                        ensure!(
                            dec.skew.at(i, j) + skew_t.at(i, j) == Rational::zero(),
                            "case {case}: K not skew at ({i},{j})"
                        );
                    }
                }
                let recomposed = dec
                    .skew
                    .add(&Matrix::outer(&dec.c, &dec.d).unwrap().scale(&rat(1, 2)))
                    .map_err(|e| e.to_string())?;
                ensure!(
                    recomposed == *game.matrix(),
                    "case {case}: K + cdᵀ/2 does not recompose the payoff matrix"
                );
                for _ in 0..100 {
                    let z: Vec<Rational> = (0..n)
                        .map(|_| rat(r.random_range(-9..=9), r.random_range(1..=4)))
                        .collect();
                    let quad = dec.skew.bilinear(&z, &z).map_err(|e| e.to_string())?;
                    ensure!(quad.is_zero(), "case {case}: zᵀKz nonzero");
                }

                let d_min = dec.d.iter().min().cloned().unwrap();
                let d_max = dec.d.iter().max().cloned().unwrap();
                let span = &d_max - &d_min + int(2);
                let base = &d_min - int(1);
                for step in 0..=8 {
                    let lambda = &base + &span * rat(step, 8);
                    let out = solve(&parameterized_lp(&dec, &lambda)).map_err(|e| e.to_string())?;
                    ensure!(
                        out.status == LpStatus::Optimal,
                        "case {case}: frozen program not optimal at grid point {step}"
                    );
                    ensure!(
                        out.objective_value == Some(Rational::zero()),
                        "case {case}: nonzero optimum at grid point {step}"
                    );

                    // Feasible-point inequality: objective ≤ 0 at any feasible
                    // point, with equality exactly at complementary points.
                    for _ in 0..10 {
                        let x = random_positive_simplex(&mut r, n);
                        let shifted: Vec<Rational> = dec
                            .skew
                            .mul_vec(x.weights())
                            .map_err(|e| e.to_string())?
                            .iter()
                            .zip(&dec.c)
                            .map(|(kx, ci)| kx + ci * &lambda * rat(1, 2))
                            .collect();
                        let tight = shifted.iter().max().cloned().unwrap();
                        for pi in [tight.clone(), &tight + rat(1, 3)] {
                            let ctx: Rational =
                                dec.c.iter().zip(x.weights()).map(|(a, b)| a * b).sum();
                            let objective = &lambda * &ctx * rat(1, 2) - &pi;
                            ensure!(
                                objective <= Rational::zero(),
                                "case {case}: feasible objective positive"
                            );
                            let complementary = x
                                .weights()
                                .iter()
                                .zip(&shifted)
                                .all(|(xi, si)| (xi * &(si - &pi)).is_zero());
                            ensure!(
                                (objective == Rational::zero()) == complementary,
                                "case {case}: equality/complementarity mismatch"
                            );
                        }
                    }

                    // F(λ) is a nonempty subinterval of [d_min, d_max], and
                    // its end witnesses survive parameter substitution by the
                    // constant form λ·1.
                    let f = optimal_face_range(&dec, &lambda).map_err(|e| e.to_string())?;
                    ensure!(f.lo <= f.hi, "case {case}: empty face range");
                    ensure!(
                        d_min <= f.lo && f.hi <= d_max,
                        "case {case}: face range escapes [d_min, d_max]"
                    );
                    for x in [&f.witness_lo, &f.witness_hi] {
                        let ones = vec![lambda.clone(); n];
                        ensure!(
                            check_parameter_substitution(&dec, &lambda, x, &ones)
                                .map_err(|e| e.to_string())?,
                            "case {case}: λ·1 substitution failed"
                        );
                    }
                }

                // At the solved fixed point, substituting d itself recovers
                // an equilibrium of the original game.
                let sol = solve_rank1(&game).map_err(|e| e.to_string())?;
                ensure!(
                    check_parameter_substitution(&dec, &sol.lambda, &sol.strategy, &dec.d)
                        .map_err(|e| e.to_string())?,
                    "case {case}: d substitution failed at the fixed point"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_skew_game_returns_uniform() {
    criterion(
        "criterion 9: rock-paper-scissors solves to the uniform strategy",
        Duration::from_secs(1),
        || {
            let rps = SymmetricGame::new(Matrix::from_int_rows(&[
                [0, 1, -1],
                [-1, 0, 1],
                [1, -1, 0],
            ]))
            .map_err(|e| e.to_string())?;
            let sol = solve_rank1(&rps).map_err(|e| e.to_string())?;
            ensure!(
                sol.strategy == MixedStrategy::uniform(3),
                "strategy was {:?}",
                sol.strategy
            );
            ensure!(sol.lambda == Rational::zero(), "lambda nonzero");
            ensure!(sol.payoff == Rational::zero(), "payoff nonzero");
            Ok(())
        },
    );
}

#[test]
fn criterion_10_imitation_contracts_on_random_positive_games() {
    criterion(
        "criterion 10: lift/rescale/witness contracts hold on 50 random positive games",
        Duration::from_secs(30),
        || {
            let mut r = rng(0x5eed_000a);
            let mut repaired = 0usize;
            for case in 0..50 {
                let n = 2 + (case % 3);
                let a = if case == 0 {
                    // Known instance where the best replies are a strict
                    // subset of the positive-payoff rows.
                    Matrix::from_int_rows(&[[2, 1], [1, 1]])
                } else {
                    let data = (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| rat(r.random_range(1..=5), r.random_range(1..=3)))
                                .collect()
                        })
                        .collect();
                    Matrix::from_rows(data).map_err(|e| e.to_string())?
                };
                let n = a.rows();
                let game = SymmetricGame::new(a.clone()).map_err(|e| e.to_string())?;
                let oracle = enumerate_symmetric_equilibria(&game).map_err(|e| e.to_string())?;
                ensure!(
                    !oracle.equilibria.is_empty(),
                    "case {case}: oracle found no symmetric equilibrium"
                );
                let ones = vec![int(1); n];
                let diag: Vec<Rational> =
                    (0..n).map(|_| rat(r.random_range(1..=4), r.random_range(1..=2))).collect();
                for y in &oracle.equilibria {
                    let ay = a.mul_vec(y.weights()).map_err(|e| e.to_string())?;
                    if ay.iter().max() != ay.iter().min() {
                        repaired += 1;
                    }
                    let x = witness_for_diagonal(&a, y, &ones).map_err(|e| e.to_string())?;
                    let plain = identity_imitation_game(&a).map_err(|e| e.to_string())?;
                    ensure!(
                        is_nash(&plain, &x, y).map_err(|e| e.to_string())?.holds,
                        "case {case}: witness is not an imitation equilibrium"
                    );
                    let lifted = lift_to_symmetric(&a, &x, y).map_err(|e| e.to_string())?;
                    ensure!(lifted == *y, "case {case}: lift did not return the target");

                    let xd = witness_for_diagonal(&a, y, &diag).map_err(|e| e.to_string())?;
                    let weighted = imitation_game(&a, &diag).map_err(|e| e.to_string())?;
                    ensure!(
                        is_nash(&weighted, &xd, y).map_err(|e| e.to_string())?.holds,
                        "case {case}: diagonal witness is not an equilibrium"
                    );
                    ensure!(
                        rescale_for_diagonal(&x, &diag).map_err(|e| e.to_string())? == xd,
                        "case {case}: witness does not factor through the rescale"
                    );
                    ensure!(
                        rescale_for_diagonal(&x, &ones).map_err(|e| e.to_string())? == x,
                        "case {case}: identity rescale moved the strategy"
                    );
                }
            }
            ensure!(
                repaired >= 1,
                "no case exercised the best-reply restriction"
            );
            Ok(())
        },
    );
}
