//! Brute-force cross-checks for the simplex and the closed forms.
//!
//! These deliberately avoid the simplex path: Problem 1 is solved by
//! enumerating basic solutions of the equality system, Problem 2 by a
//! refined grid search over the breakpoint heights.

use crate::error::{Error, Result};
use crate::problems::{make_lp1, BVector, ProblemInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub instances_examined: u64,
}

/// Exhaustive optimum of Problem 1: every choice of basic columns of the
/// deduplicated equality system is solved as a square system, filtered
/// by nonnegativity, and the best s_0 kept.
pub fn lp1_vertex_enumeration(inst: &ProblemInstance) -> Result<OracleResult> {
    if inst.q() > 12 {
        return Err(Error::BudgetExceeded {
            what: "vertex enumeration limited to q <= 12",
        });
    }
    let lp = make_lp1(inst);
    let m = lp.eq_matrix.len();
    let n = lp.num_vars();

    let mut best: Option<Vec<f64>> = None;
    let mut examined = 0u64;
    for cols in combinations(n, m) {
        examined += 1;
        let aug: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut row: Vec<f64> = cols.iter().map(|&j| lp.eq_matrix[i][j]).collect();
                row.push(lp.eq_rhs[i]);
                row
            })
            .collect();
        let Some(xb) = solve_square(aug) else {
            continue; // singular subsystem, skip
        };
        if xb.iter().any(|&v| v < -1e-10) {
            continue;
        }
        let mut x = vec![0.0; n];
        for (pos, &j) in cols.iter().enumerate() {
            x[j] = xb[pos];
        }
        if best.as_ref().map_or(true, |b| x[0] > b[0]) {
            best = Some(x);
        }
    }
    let argmax = best.expect("Problem 1 always has the uniform feasible point");
    Ok(OracleResult {
        value: argmax[0],
        argmax,
        instances_examined: examined,
    })
}

/// Grid search over b in [-span, span]^(p-1) with a local refinement pass
/// that halves the step 10 times around the incumbent.
pub fn lp2_grid_search(
    inst: &ProblemInstance,
    span: f64,
    steps: usize,
) -> Result<OracleResult> {
    assert!(span > 0.0 && steps >= 100 || inst.p() == 1);
    if inst.p() > 4 {
        return Err(Error::BudgetExceeded {
            what: "grid search limited to p <= 4",
        });
    }
    let dims = inst.p() as usize - 1;
    let qf = inst.q() as f64;
    let objective = |b: &BVector| (1.0 + 2.0 * b.b.iter().sum::<f64>()) / qf;

    if dims == 0 {
        return Ok(OracleResult {
            value: 1.0 / qf,
            argmax: vec![],
            instances_examined: 1,
        });
    }

    let mut examined = 0u64;
    let mut incumbent: Option<(f64, Vec<f64>)> = None;
    let step = 2.0 * span / (steps - 1) as f64;
    let mut point = vec![0usize; dims];
    loop {
        let b = BVector {
            b: point.iter().map(|&i| -span + i as f64 * step).collect(),
        };
        examined += 1;
        if b.is_feasible(inst, 1e-12) {
            let v = objective(&b);
            if incumbent.as_ref().map_or(true, |(best, _)| v > *best) {
                incumbent = Some((v, b.b));
            }
        }
        // odometer over the grid
        let mut d = 0;
        loop {
            point[d] += 1;
            if point[d] < steps {
                break;
            }
            point[d] = 0;
            d += 1;
            if d == dims {
                break;
            }
        }
        if d == dims {
            break;
        }
    }
    let (mut best_v, mut best_b) =
        incumbent.expect("b = 0 is always feasible, grid spans the origin region");

    // refinement: nested local grids around the incumbent, radius halved
    // ten times; 17 points per axis keeps the angular resolution fine
    // enough to track the binding-constraint edge
    let mut radius = 2.0 * step;
    const LOCAL_PTS: i32 = 17;
    for _ in 0..10 {
        let spacing = 2.0 * radius / (LOCAL_PTS - 1) as f64;
        let center = best_b.clone();
        let mut offsets = vec![0i32; dims];
        'local: loop {
            let cand: Vec<f64> = center
                .iter()
                .zip(offsets.iter())
                .map(|(&x, &o)| x - radius + o as f64 * spacing)
                .collect();
            let b = BVector { b: cand };
            examined += 1;
            if b.is_feasible(inst, 1e-12) {
                let v = objective(&b);
                if v > best_v {
                    best_v = v;
                    best_b = b.b;
                }
            }
            let mut d = 0;
            loop {
                offsets[d] += 1;
                if offsets[d] < LOCAL_PTS {
                    break;
                }
                offsets[d] = 0;
                d += 1;
                if d == dims {
                    break 'local;
                }
            }
        }
        radius /= 2.0;
    }

    Ok(OracleResult {
        value: best_v,
        argmax: best_b,
        instances_examined: examined,
    })
}

/// All size-k index subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && cur[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn solve_square(mut aug: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = aug.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&a, &b| aug[a][col].abs().partial_cmp(&aug[b][col].abs()).unwrap())?;
        if aug[piv][col].abs() < 1e-11 {
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
