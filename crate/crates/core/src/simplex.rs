//! Two-phase primal simplex on a dense tableau.
//!
//! The canonical [`LinearProgram`] is lowered to standard form: free
//! variables split into nonnegative difference pairs, inequality rows
//! given surplus variables, every row sign-normalized to a nonnegative
//! right-hand side, and one artificial variable per row for phase 1.
//! Pivoting uses the Dantzig rule, falling back to Bland's rule once a
//! run of degenerate pivots suggests cycling. Pivot order is
//! deterministic, so repeated solves are bit-identical.

use crate::error::{Error, Result};
use crate::problems::LinearProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solution carrier: optimal value, original-space variables, and the
/// basis of the final phase-2 tableau (standard-form column indices).
#[derive(Debug, Clone, PartialEq)]
pub struct LPSolution {
    pub status: SolveStatus,
    pub value: f64,
    pub variables: Vec<f64>,
    pub basis: Vec<usize>,
    pub max_residual: f64,
}

/// Standard-form image of a LinearProgram: maximize c.x, A x = b, x >= 0.
/// `var_map[j]` lists the standard columns representing original var j as
/// (positive column, optional negated column, shift).
struct StandardForm {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
    offset: f64,
    n_structural: usize,
    var_map: Vec<(usize, Option<usize>, f64)>,
}

fn lower_to_standard(lp: &LinearProgram) -> StandardForm {
    let n = lp.num_vars();
    let m = lp.eq_matrix.len() + lp.ineq_matrix.len();

    // column layout: structural columns first, then one surplus per inequality
    let mut var_map = Vec::with_capacity(n);
    let mut next = 0usize;
    for j in 0..n {
        match lp.lower_bounds[j] {
            Some(l) => {
                var_map.push((next, None, l));
                next += 1;
            }
            None => {
                var_map.push((next, Some(next + 1), 0.0));
                next += 2;
            }
        }
    }
    let n_structural = next + lp.ineq_matrix.len();

    let mut c = vec![0.0; n_structural];
    let mut offset = lp.objective_offset;
    for j in 0..n {
        let (pos, neg, shift) = var_map[j];
        c[pos] = lp.objective[j];
        if let Some(neg) = neg {
            c[neg] = -lp.objective[j];
        }
        offset += lp.objective[j] * shift;
    }

    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let expand_row = |row: &[f64]| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; n_structural];
        let mut shift_total = 0.0;
        for j in 0..n {
            let (pos, neg, shift) = var_map[j];
            out[pos] = row[j];
            if let Some(neg) = neg {
                out[neg] = -row[j];
            }
            shift_total += row[j] * shift;
        }
        (out, shift_total)
    };

    for (row, &rhs) in lp.eq_matrix.iter().zip(lp.eq_rhs.iter()) {
        let (out, shift) = expand_row(row);
        a.push(out);
        b.push(rhs - shift);
    }
    for (i, (row, &rhs)) in lp.ineq_matrix.iter().zip(lp.ineq_rhs.iter()).enumerate() {
        let (mut out, shift) = expand_row(row);
        out[next + i] = -1.0; // surplus: row.x - s = rhs
        a.push(out);
        b.push(rhs - shift);
    }

    // nonnegative right-hand sides
    for i in 0..m {
        if b[i] < 0.0 {
            for v in a[i].iter_mut() {
                *v = -*v;
            }
            b[i] = -b[i];
        }
    }

    StandardForm {
        a,
        b,
        c,
        offset,
        n_structural,
        var_map,
    }
}

struct Tableau {
    /// m rows of n columns plus trailing rhs column.
    rows: Vec<Vec<f64>>,
    /// reduced-cost row (maximization: optimal when all entries <= 0), last entry is -value
    cost: Vec<f64>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col];
        let inv = 1.0 / piv;
        for v in self.rows[row].iter_mut() {
            *v *= inv;
        }
        for i in 0..self.rows.len() {
            if i != row {
                let factor = self.rows[i][col];
                if factor != 0.0 {
                    for j in 0..=self.n {
                        self.rows[i][j] -= factor * self.rows[row][j];
                    }
                }
            }
        }
        let factor = self.cost[col];
        if factor != 0.0 {
            for j in 0..=self.n {
                self.cost[j] -= factor * self.rows[row][j];
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex to optimality. `allowed` masks the columns eligible to enter.
    fn optimize(&mut self, allowed: &[bool], tol: f64, degen_limit: usize) -> Result<SolveStatus> {
        let mut degenerate_run = 0usize;
        loop {
            let bland = degenerate_run >= degen_limit;
            let entering = if bland {
                (0..self.n).find(|&j| allowed[j] && self.cost[j] > tol)
            } else {
                (0..self.n)
                    .filter(|&j| allowed[j] && self.cost[j] > tol)
                    .max_by(|&a, &b| {
                        self.cost[a]
                            .partial_cmp(&self.cost[b])
                            .unwrap()
                            .then(b.cmp(&a)) // ties: smallest index
                    })
            };
            let Some(col) = entering else {
                return Ok(SolveStatus::Optimal);
            };

            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.rows.len() {
                let aij = self.rows[i][col];
                if aij > tol {
                    let ratio = self.rows[i][self.n] / aij;
                    let better = match best {
                        None => true,
                        Some((r, bi)) => {
                            ratio < r - 1e-12
                                || (ratio <= r + 1e-12 && self.basis[i] < self.basis[bi])
                        }
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((ratio, row)) = best else {
                return Ok(SolveStatus::Unbounded);
            };
            let piv = self.rows[row][col];
            if piv.abs() < tol {
                return Err(Error::NumericalBreakdown { pivot: piv });
            }
            if ratio.abs() <= 1e-12 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, col);
        }
    }
}

/// Builds the standard form and its phase-1 tableau; shared with
/// [`certificate_check`] so both see identical column layouts.
fn standard_form(lp: &LinearProgram) -> StandardForm {
    lower_to_standard(lp)
}

/// Solves the LP with a two-phase dense simplex.
pub fn solve(lp: &LinearProgram, tol: f64) -> Result<LPSolution> {
    assert!(tol > 0.0);
    assert!(lp.validate(), "malformed LinearProgram");
    let sf = standard_form(lp);
    let m = sf.a.len();
    let n = sf.n_structural;
    let n_total = n + m; // artificials appended

    // trivial LP without variables (p = 1 instances of Problem 2)
    if n == 0 && m == 0 {
        return Ok(LPSolution {
            status: SolveStatus::Optimal,
            value: sf.offset,
            variables: vec![],
            basis: vec![],
            max_residual: 0.0,
        });
    }

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![0.0; n_total + 1];
        row[..n].copy_from_slice(&sf.a[i]);
        row[n + i] = 1.0;
        row[n_total] = sf.b[i];
        rows.push(row);
    }

    // phase 1: maximize -sum(artificials)
    let mut cost = vec![0.0; n_total + 1];
    for row in &rows {
        for j in 0..=n_total {
            cost[j] += row[j];
        }
    }
    for j in n..n_total {
        cost[j] = 0.0;
    }
    let mut tab = Tableau {
        rows,
        cost,
        basis: (n..n_total).collect(),
        n: n_total,
    };
    let degen_limit = 3 * n_total.max(1);
    let allowed_all = vec![true; n_total];
    tab.optimize(&allowed_all, tol, degen_limit)?;
    let phase1_value = tab.cost[n_total]; // -(-sum artificials) accumulated; see below
    // cost row was initialized as sum of rows, so cost[rhs] tracks sum of
    // artificial values; infeasible when it stays positive
    if phase1_value > 1e-7 {
        return Ok(LPSolution {
            status: SolveStatus::Infeasible,
            value: f64::NAN,
            variables: vec![],
            basis: vec![],
            max_residual: f64::NAN,
        });
    }

    // drive leftover zero-valued artificials out of the basis
    let mut drop_rows = Vec::new();
    for i in 0..m {
        if tab.basis[i] >= n {
            let col = (0..n).find(|&j| tab.rows[i][j].abs() > tol);
            match col {
                Some(j) => tab.pivot(i, j),
                None => drop_rows.push(i), // redundant row
            }
        }
    }
    if !drop_rows.is_empty() {
        for &i in drop_rows.iter().rev() {
            tab.rows.remove(i);
            tab.basis.remove(i);
        }
    }

    // phase 2: restore the true objective as reduced costs over current basis
    let m2 = tab.rows.len();
    let mut cost = vec![0.0; n_total + 1];
    cost[..n].copy_from_slice(&sf.c);
    for i in 0..m2 {
        let cb = if tab.basis[i] < n { sf.c[tab.basis[i]] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..=n_total {
                cost[j] -= cb * tab.rows[i][j];
            }
        }
    }
    tab.cost = cost;
    let mut allowed = vec![true; n_total];
    for a in allowed.iter_mut().skip(n) {
        *a = false; // artificials may never re-enter
    }
    let status = tab.optimize(&allowed, tol, degen_limit)?;
    if status == SolveStatus::Unbounded {
        return Ok(LPSolution {
            status,
            value: f64::INFINITY,
            variables: vec![],
            basis: vec![],
            max_residual: f64::NAN,
        });
    }

    let mut x = vec![0.0; n];
    for (i, &bi) in tab.basis.iter().enumerate() {
        if bi < n {
            x[bi] = tab.rows[i][n_total];
        }
    }
    let variables: Vec<f64> = sf
        .var_map
        .iter()
        .map(|&(pos, neg, shift)| x[pos] - neg.map_or(0.0, |nc| x[nc]) + shift)
        .collect();
    let value = sf
        .c
        .iter()
        .zip(x.iter())
        .map(|(ci, xi)| ci * xi)
        .sum::<f64>()
        + sf.offset;

    let max_residual = residual(lp, &variables);

    Ok(LPSolution {
        status: SolveStatus::Optimal,
        value,
        variables,
        basis: tab.basis,
        max_residual,
    })
}

/// Largest constraint violation of `x` against the original LP.
pub fn residual(lp: &LinearProgram, x: &[f64]) -> f64 {
    let dot = |row: &[f64]| -> f64 { row.iter().zip(x).map(|(a, b)| a * b).sum() };
    let mut worst: f64 = 0.0;
    for (row, &rhs) in lp.eq_matrix.iter().zip(lp.eq_rhs.iter()) {
        worst = worst.max((dot(row) - rhs).abs());
    }
    for (row, &rhs) in lp.ineq_matrix.iter().zip(lp.ineq_rhs.iter()) {
        worst = worst.max((rhs - dot(row)).max(0.0));
    }
    for (j, lb) in lp.lower_bounds.iter().enumerate() {
        if let Some(l) = lb {
            worst = worst.max((l - x[j]).max(0.0));
        }
    }
    worst
}

/// Independent optimality certificate: primal feasibility of the solution
/// plus sign-correct reduced costs computed from the basis via a fresh
/// Gaussian solve of the basis system (no tableau state reused).
pub fn certificate_check(lp: &LinearProgram, sol: &LPSolution, tol: f64) -> bool {
    if sol.status != SolveStatus::Optimal {
        return false;
    }
    if residual(lp, &sol.variables) > tol {
        return false;
    }
    let sf = standard_form(lp);
    let n = sf.n_structural;
    if n == 0 {
        return true;
    }
    let m = sol.basis.len();
    if sol.basis.iter().any(|&j| j >= n) {
        return false;
    }

    // y solves B^T y = c_B over the rows that survived phase 1.
    // The basis records which rows remain only implicitly (rows may have
    // been dropped as redundant), so rebuild from all rows and select a
    // consistent subset by rank: with dedup the kept systems have full
    // row rank in practice, and m equals the surviving row count.
    let row_ids = surviving_rows(&sf, &sol.basis);
    let Some(row_ids) = row_ids else {
        return false;
    };
    let mut bt = vec![vec![0.0; m + 1]; m];
    for (col_pos, &j) in sol.basis.iter().enumerate() {
        for (row_pos, &i) in row_ids.iter().enumerate() {
            bt[col_pos][row_pos] = sf.a[i][j];
        }
        bt[col_pos][m] = sf.c[j];
    }
    let Some(y) = gauss_solve(bt) else {
        return false;
    };

    // reduced costs c_j - y.A_j must be <= tol for a maximum
    for j in 0..n {
        let z: f64 = row_ids
            .iter()
            .enumerate()
            .map(|(pos, &i)| y[pos] * sf.a[i][j])
            .sum();
        if sf.c[j] - z > tol {
            return false;
        }
    }
    true
}

/// Selects `basis.len()` rows whose basis submatrix is nonsingular, by
/// Gaussian pivoting on the basis columns. Rows dropped as redundant in
/// phase 1 are recovered here without replaying the solve.
fn surviving_rows(sf: &StandardForm, basis: &[usize]) -> Option<Vec<usize>> {
    let m_all = sf.a.len();
    let m = basis.len();
    if m > m_all {
        return None;
    }
    if m == m_all {
        return Some((0..m_all).collect());
    }
    let mut work: Vec<Vec<f64>> = (0..m_all)
        .map(|i| basis.iter().map(|&j| sf.a[i][j]).collect())
        .collect();
    let mut selected = Vec::with_capacity(m);
    let mut used = vec![false; m_all];
    for col in 0..m {
        let piv = (0..m_all)
            .filter(|&r| !used[r])
            .max_by(|&a, &b| work[a][col].abs().partial_cmp(&work[b][col].abs()).unwrap())?;
        if work[piv][col].abs() < 1e-11 {
            return None;
        }
        used[piv] = true;
        selected.push(piv);
        for r in 0..m_all {
            if !used[r] {
                let f = work[r][col] / work[piv][col];
                if f != 0.0 {
                    for c in col..m {
                        work[r][c] -= f * work[piv][c];
                    }
                }
            }
        }
    }
    selected.sort_unstable();
    Some(selected)
}

/// Solves the augmented system [A | b] by Gaussian elimination with
/// partial pivoting; returns None when singular.
fn gauss_solve(mut aug: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = aug.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&a, &b| aug[a][col].abs().partial_cmp(&aug[b][col].abs()).unwrap())?;
        if aug[piv][col].abs() < 1e-12 {
            return None;
        }
        aug.swap(col, piv);
        for r in 0..m {
            if r != col {
                let f = aug[r][col] / aug[col][col];
                if f != 0.0 {
                    for c in col..=m {
                        aug[r][c] -= f * aug[col][c];
                    }
                }
            }
        }
    }
    Some((0..m).map(|i| aug[i][m] / aug[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{make_instance, make_lp1, make_lp2, DEFAULT_TOL};

    fn one_var_lp() -> LinearProgram {
        LinearProgram {
            objective: vec![1.0],
            objective_offset: 0.0,
            eq_matrix: vec![],
            eq_rhs: vec![],
            ineq_matrix: vec![vec![-1.0]],
            ineq_rhs: vec![-1.0],
            lower_bounds: vec![Some(0.0)],
            variable_labels: vec!["x".into()],
        }
    }

    #[test]
    fn one_variable_sanity() {
        let sol = solve(&one_var_lp(), DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.value - 1.0).abs() < 1e-12);
        assert!((sol.variables[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lp1_2_5_matches_theorem3() {
        let inst = make_instance(2, 5).unwrap();
        let sol = solve(&make_lp1(&inst), DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.value - 0.4472136).abs() < 1e-7);
        assert!((sol.variables[0] - 0.4472136).abs() < 1e-7);
        // 1/sqrt(5) is the exact optimum here
        assert!((sol.value - 5f64.sqrt().recip()).abs() < 1e-12);
    }

    #[test]
    fn lp2_3_8_matches_theorem5() {
        let inst = make_instance(3, 8).unwrap();
        let sol = solve(&make_lp2(&inst), DEFAULT_TOL).unwrap();
        let expect = (2.0 + 2f64.sqrt()) / 8.0;
        assert!((sol.value - expect).abs() < 1e-10);
        assert!((sol.value - 0.4267767).abs() < 1e-7);
    }

    #[test]
    fn lp1_p1_value_is_one_third() {
        // the optimum pins s_0 = 1/3; the split of the rest over s_1, s_2
        // is not unique, so only value, s_0, and feasibility are checked
        let inst = make_instance(1, 3).unwrap();
        let lp = make_lp1(&inst);
        let sol = solve(&lp, DEFAULT_TOL).unwrap();
        assert!((sol.value - 1.0 / 3.0).abs() < 1e-12);
        assert!((sol.variables[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!(residual(&lp, &sol.variables) < 1e-12);
    }

    #[test]
    fn infeasible_detected() {
        let lp = LinearProgram {
            objective: vec![1.0],
            objective_offset: 0.0,
            eq_matrix: vec![vec![1.0]],
            eq_rhs: vec![-1.0],
            ineq_matrix: vec![],
            ineq_rhs: vec![],
            lower_bounds: vec![Some(0.0)],
            variable_labels: vec!["x".into()],
        };
        let sol = solve(&lp, DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, SolveStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram {
            objective: vec![1.0],
            objective_offset: 0.0,
            eq_matrix: vec![],
            eq_rhs: vec![],
            ineq_matrix: vec![vec![1.0]],
            ineq_rhs: vec![0.0],
            lower_bounds: vec![Some(0.0)],
            variable_labels: vec!["x".into()],
        };
        let sol = solve(&lp, DEFAULT_TOL).unwrap();
        assert_eq!(sol.status, SolveStatus::Unbounded);
    }

    #[test]
    fn certificate_accepts_lp1_1_4() {
        let inst = make_instance(1, 4).unwrap();
        let lp = make_lp1(&inst);
        let sol = solve(&lp, DEFAULT_TOL).unwrap();
        assert!(certificate_check(&lp, &sol, 1e-8));
    }

    #[test]
    fn certificate_rejects_perturbed() {
        let inst = make_instance(1, 4).unwrap();
        let lp = make_lp1(&inst);
        let mut sol = solve(&lp, DEFAULT_TOL).unwrap();
        sol.variables[1] += 1e-3;
        assert!(!certificate_check(&lp, &sol, 1e-8));
    }

    #[test]
    fn certificate_accepts_lp2_3_7() {
        let inst = make_instance(3, 7).unwrap();
        let lp = make_lp2(&inst);
        let sol = solve(&lp, DEFAULT_TOL).unwrap();
        assert!(certificate_check(&lp, &sol, 1e-8));
    }

    #[test]
    fn reproducible_solutions() {
        let inst = make_instance(3, 11).unwrap();
        let lp = make_lp2(&inst);
        let a = solve(&lp, DEFAULT_TOL).unwrap();
        let b = solve(&lp, DEFAULT_TOL).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
