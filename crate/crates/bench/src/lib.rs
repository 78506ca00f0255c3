//! Shared generators for the benchmark targets.

use symgame::matrix::Matrix;
use symgame::rational::{int, rat, Rational};

/// Deterministic matrix with small integer entries, suitable for the
/// support-enumeration benchmarks.
pub fn dense_int_matrix(rows: usize, cols: usize, seed: i64) -> Matrix {
    let entries = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| int(((seed + 3 * i as i64 + 5 * j as i64) % 7) - 3))
                .collect::<Vec<Rational>>()
        })
        .collect();
    Matrix::from_rows(entries).expect("generator rows are rectangular")
}

/// Matrix `c·dᵀ/2 + K` with `K` skew and `c`, `d` sharing a direction, so the
/// symmetrized matrix `A + Aᵀ` equals `c·dᵀ` (symmetric, rank one). Suitable
/// for the fixed-point solver.
pub fn rank1_symmetrizable_matrix(n: usize, seed: i64) -> Matrix {
    let u: Vec<i64> = (0..n).map(|i| (seed + i as i64) % 3 + 1).collect();
    let c: Vec<Rational> = u.iter().map(|&t| int((seed % 2 + 1) * t)).collect();
    let d: Vec<Rational> = u.iter().map(|&t| rat(t, 2)).collect();
    let mut m = Matrix::outer(&c, &d).expect("outer product of equal-length vectors");
    m = m.scale(&rat(1, 2));
    for i in 0..n {
        for j in (i + 1)..n {
            let bump = int(((seed + i as i64 * 7 + j as i64) % 5) - 2);
            *m.at_mut(i, j) += &bump;
            *m.at_mut(j, i) -= &bump;
        }
    }
    m
}
