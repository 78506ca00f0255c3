//! Exact linear programming: two-phase primal simplex over rationals with
//! Bland's anti-cycling rule.
//!
//! The solver trades speed for exactness and determinism. Free variables are
//! split into differences of nonnegative variables, equalities (and
//! inequalities with negative right-hand sides) get artificial variables, and
//! phase one drives the artificials to zero before the real objective runs.
//! Every returned solution is a basic feasible solution, so `Optimal`
//! outcomes are vertices of the feasible region.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarBound {
    NonNegative,
    Free,
}

/// `optimize objective · x` subject to `ineq_lhs · x ≤ ineq_rhs`,
/// `eq_lhs · x = eq_rhs`, and the per-variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub ineq_lhs: Vec<Vec<Rational>>,
    pub ineq_rhs: Vec<Rational>,
    pub eq_lhs: Vec<Vec<Rational>>,
    pub eq_rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    /// Program over `n` nonnegative variables with a zero objective and no
    /// constraints yet.
    pub fn new(n: usize, sense: Sense) -> LinearProgram {
        LinearProgram {
            sense,
            objective: vec![Rational::zero(); n],
            ineq_lhs: Vec::new(),
            ineq_rhs: Vec::new(),
            eq_lhs: Vec::new(),
            eq_rhs: Vec::new(),
            bounds: vec![VarBound::NonNegative; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn push_ineq(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.ineq_lhs.push(row);
        self.ineq_rhs.push(rhs);
    }

    pub fn push_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.eq_lhs.push(row);
        self.eq_rhs.push(rhs);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::MalformedProgram(
                "program needs at least one variable".into(),
            ));
        }
        if self.objective.len() != n {
            return Err(Error::MalformedProgram(format!(
                "objective has {} coefficients for {} variables",
                self.objective.len(),
                n
            )));
        }
        if self.ineq_lhs.len() != self.ineq_rhs.len() || self.eq_lhs.len() != self.eq_rhs.len() {
            return Err(Error::MalformedProgram(
                "constraint matrix and rhs lengths differ".into(),
            ));
        }
        for row in self.ineq_lhs.iter().chain(&self.eq_lhs) {
            if row.len() != n {
                return Err(Error::MalformedProgram(format!(
                    "constraint row has {} coefficients for {} variables",
                    row.len(),
                    n
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Exact optimal point in the original variable space, when `Optimal`.
    pub solution: Option<Vec<Rational>>,
    /// Exact optimum in the original sense, when `Optimal`.
    pub objective_value: Option<Rational>,
}

impl LpOutcome {
    fn not_optimal(status: LpStatus) -> LpOutcome {
        LpOutcome {
            status,
            solution: None,
            objective_value: None,
        }
    }
}

/// Solve `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    Simplex::build(lp).run()
}

/// Solve `lp`, then optimize `secondary` over its optimal face: the original
/// constraints plus the equality pinning the primary objective at its
/// optimum. Errors with `PrimaryNotOptimal` when `lp` itself is infeasible
/// or unbounded.
pub fn optimize_over_optimal_face(
    lp: &LinearProgram,
    secondary: &[Rational],
    sense: Sense,
) -> Result<LpOutcome> {
    let primary = solve(lp)?;
    optimize_over_optimal_face_with(lp, &primary, secondary, sense)
}

/// Same as [`optimize_over_optimal_face`] but reuses an already computed
/// primary outcome instead of solving `lp` again.
pub fn optimize_over_optimal_face_with(
    lp: &LinearProgram,
    primary: &LpOutcome,
    secondary: &[Rational],
    sense: Sense,
) -> Result<LpOutcome> {
    if primary.status != LpStatus::Optimal {
        return Err(Error::PrimaryNotOptimal);
    }
    let value = primary
        .objective_value
        .clone()
        .ok_or(Error::PrimaryNotOptimal)?;
    if secondary.len() != lp.num_vars() {
        return Err(Error::MalformedProgram(format!(
            "secondary objective has {} coefficients for {} variables",
            secondary.len(),
            lp.num_vars()
        )));
    }
    let mut face = lp.clone();
    face.sense = sense;
    face.objective = secondary.to_vec();
    face.push_eq(lp.objective.clone(), value);
    let outcome = solve(&face)?;
    if outcome.status != LpStatus::Optimal {
        // The primary optimum lies on the face, so it cannot be empty, and a
        // bounded secondary can only fail by unboundedness along the face.
        if outcome.status == LpStatus::Infeasible {
            return Err(Error::InternalInvariantViolation(
                "optimal face reported infeasible".into(),
            ));
        }
    }
    Ok(outcome)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Le,
    Ge,
    Eq,
}

/// Dense exact simplex tableau. Constraint rows carry the right-hand side in
/// the last cell; the two objective rows store reduced costs with the
/// negated objective value in the last cell.
struct Simplex {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    art_obj: Vec<Rational>,
    basis: Vec<usize>,
    enterable: Vec<bool>,
    ncols: usize,
    num_art: usize,
    col_map: Vec<(usize, bool)>,
    orig_vars: usize,
    sense: Sense,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Simplex {
        // Split free variables into x⁺ − x⁻.
        let mut col_map: Vec<(usize, bool)> = Vec::new();
        for (j, b) in lp.bounds.iter().enumerate() {
            col_map.push((j, false));
            if *b == VarBound::Free {
                col_map.push((j, true));
            }
        }
        let structural = col_map.len();

        // Gather rows, normalizing right-hand sides to be nonnegative.
        let mut kinds: Vec<RowKind> = Vec::new();
        let mut lhs: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let all_rows = lp
            .ineq_lhs
            .iter()
            .zip(&lp.ineq_rhs)
            .map(|(r, b)| (r, b, RowKind::Le))
            .chain(
                lp.eq_lhs
                    .iter()
                    .zip(&lp.eq_rhs)
                    .map(|(r, b)| (r, b, RowKind::Eq)),
            );
        for (row, b, kind) in all_rows {
            let mut coeffs: Vec<Rational> = vec![Rational::zero(); structural];
            for (c, &(orig, negated)) in coeffs.iter_mut().zip(&col_map) {
                *c = if negated {
                    -row[orig].clone()
                } else {
                    row[orig].clone()
                };
            }
            let mut b = b.clone();
            let mut kind = kind;
            if b.is_negative() {
                for c in coeffs.iter_mut() {
                    *c = -c.clone();
                }
                b = -b;
                kind = match kind {
                    RowKind::Le => RowKind::Ge,
                    RowKind::Ge => RowKind::Le,
                    RowKind::Eq => RowKind::Eq,
                };
            }
            kinds.push(kind);
            lhs.push(coeffs);
            rhs.push(b);
        }

        let m = kinds.len();
        let num_slack = kinds.iter().filter(|k| **k != RowKind::Eq).count();
        let num_art = kinds.iter().filter(|k| **k != RowKind::Le).count();
        let ncols = structural + num_slack + num_art;

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis: Vec<usize> = Vec::with_capacity(m);
        let mut slack_at = structural;
        let mut art_at = structural + num_slack;
        for i in 0..m {
            let mut row = vec![Rational::zero(); ncols + 1];
            row[..structural].clone_from_slice(&lhs[i]);
            row[ncols] = rhs[i].clone();
            match kinds[i] {
                RowKind::Le => {
                    row[slack_at] = Rational::from_integer(1.into());
                    basis.push(slack_at);
                    slack_at += 1;
                }
                RowKind::Ge => {
                    row[slack_at] = Rational::from_integer((-1).into());
                    slack_at += 1;
                    row[art_at] = Rational::from_integer(1.into());
                    basis.push(art_at);
                    art_at += 1;
                }
                RowKind::Eq => {
                    row[art_at] = Rational::from_integer(1.into());
                    basis.push(art_at);
                    art_at += 1;
                }
            }
            rows.push(row);
        }

        // Phase-2 objective row: internal sense is always maximize.
        let mut obj = vec![Rational::zero(); ncols + 1];
        for (col, &(orig, negated)) in col_map.iter().enumerate() {
            let c = &lp.objective[orig];
            obj[col] = match (lp.sense, negated) {
                (Sense::Maximize, false) | (Sense::Minimize, true) => c.clone(),
                (Sense::Maximize, true) | (Sense::Minimize, false) => -c.clone(),
            };
        }

        // Phase-1 objective row: maximize −Σ artificials, priced out over the
        // initial artificial basis.
        let mut art_obj = vec![Rational::zero(); ncols + 1];
        for col in structural + num_slack..ncols {
            art_obj[col] = Rational::from_integer((-1).into());
        }
        for (i, &b) in basis.iter().enumerate() {
            if b >= structural + num_slack {
                for c in 0..=ncols {
                    let delta = rows[i][c].clone();
                    art_obj[c] += delta;
                }
            }
        }

        // Artificial columns may start basic but never re-enter.
        let mut enterable = vec![true; ncols];
        for e in enterable.iter_mut().skip(structural + num_slack) {
            *e = false;
        }

        Simplex {
            rows,
            obj,
            art_obj,
            basis,
            enterable,
            ncols,
            num_art,
            col_map,
            orig_vars: lp.bounds.len(),
            sense: lp.sense,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone().recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        let prow = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (v, p) in other.iter_mut().zip(&prow) {
                    *v -= &factor * p;
                }
            }
        }
        for objrow in [&mut self.obj, &mut self.art_obj] {
            if !objrow[col].is_zero() {
                let factor = objrow[col].clone();
                for (v, p) in objrow.iter_mut().zip(&prow) {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule entering column for the active objective row: the lowest
    /// index with strictly positive reduced cost. `None` means optimal.
    fn entering(&self, phase_one: bool) -> Option<usize> {
        let objrow = if phase_one { &self.art_obj } else { &self.obj };
        (0..self.ncols).find(|&j| self.enterable[j] && objrow[j].is_positive())
    }

    /// Bland's rule leaving row: minimum ratio, ties broken by the smallest
    /// basic variable index. `None` means the column is unbounded.
    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(Rational, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[self.ncols] / &row[col];
                let key = (ratio, self.basis[i], i);
                best = match best {
                    None => Some(key),
                    Some(cur) => {
                        if (&key.0, key.1) < (&cur.0, cur.1) {
                            Some(key)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best.map(|(_, _, i)| i)
    }

    fn iterate(&mut self, phase_one: bool) -> Result<bool> {
        // Returns false when optimal; errors on unbounded phase one.
        loop {
            let Some(col) = self.entering(phase_one) else {
                return Ok(false);
            };
            let Some(row) = self.leaving(col) else {
                if phase_one {
                    return Err(Error::InternalInvariantViolation(
                        "phase-one objective is bounded by construction".into(),
                    ));
                }
                return Ok(true);
            };
            self.pivot(row, col);
        }
    }

    fn run(mut self) -> Result<LpOutcome> {
        if self.num_art > 0 {
            self.iterate(true)?;
            if !self.art_obj[self.ncols].is_zero() {
                return Ok(LpOutcome::not_optimal(LpStatus::Infeasible));
            }
            self.evict_artificials();
        }
        let unbounded = self.iterate(false)?;
        if unbounded {
            return Ok(LpOutcome::not_optimal(LpStatus::Unbounded));
        }

        let structural = self.col_map.len();
        let mut internal = vec![Rational::zero(); structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < structural {
                internal[b] = self.rows[i][self.ncols].clone();
            }
        }
        let mut solution = vec![Rational::zero(); self.orig_vars];
        for (col, &(orig, negated)) in self.col_map.iter().enumerate() {
            if negated {
                solution[orig] -= &internal[col];
            } else {
                solution[orig] += &internal[col];
            }
        }
        let internal_value = -self.obj[self.ncols].clone();
        let objective_value = match self.sense {
            Sense::Maximize => internal_value,
            Sense::Minimize => -internal_value,
        };
        Ok(LpOutcome {
            status: LpStatus::Optimal,
            solution: Some(solution),
            objective_value: Some(objective_value),
        })
    }

    /// After a feasible phase one, pivot any artificial still in the basis
    /// out on some real column, or drop its row as redundant.
    fn evict_artificials(&mut self) {
        let art_start = self.ncols - self.num_art;
        let mut drop_rows: Vec<usize> = Vec::new();
        for i in 0..self.rows.len() {
            if self.basis[i] < art_start {
                continue;
            }
            let pivot_col = (0..art_start).find(|&j| !self.rows[i][j].is_zero());
            match pivot_col {
                Some(j) => self.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            self.rows.remove(i);
            self.basis.remove(i);
        }
    }
}
