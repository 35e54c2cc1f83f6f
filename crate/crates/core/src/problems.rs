//! Problem instances and the two linear programs.
//!
//! `A(p/q)` is the optimal value of either of two equivalent finite LPs:
//! one over residue-class sums `s_0..s_{q-1}` (maximize `s_0`), one over
//! the breakpoint heights `b_1..b_{p-1}` of a piecewise-linear candidate
//! (maximize the mean value). Discrete cosine inversion links the two
//! variable sets; `s_from_b` and `b_from_s` implement both directions.

use crate::error::{Error, Result};

/// Default feasibility tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Validated pair (p, q) with gcd(p, q) = 1 and 2p <= q; h = p/q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemInstance {
    p: u32,
    q: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// cos(2*pi*r*k/q) with the argument reduced mod q before scaling.
pub fn cos_term(r: u64, k: u64, q: u32) -> f64 {
    let m = (r * k) % q as u64;
    (2.0 * std::f64::consts::PI * m as f64 / q as f64).cos()
}

impl ProblemInstance {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        assert!(p >= 1 && q >= 2, "p >= 1 and q >= 2 required");
        let g = gcd(p, q);
        if g != 1 {
            return Err(Error::NotCoprime { p, q, gcd: g });
        }
        if 2 * p > q {
            return Err(Error::SupportTooLarge { twice_p: 2 * p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn h(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Validated pair (p, q); see [`ProblemInstance::new`].
pub fn make_instance(p: u32, q: u32) -> Result<ProblemInstance> {
    ProblemInstance::new(p, q)
}

/// Dense LP in canonical form: maximize `objective . x + objective_offset`
/// subject to `eq_matrix x = eq_rhs`, `ineq_matrix x >= ineq_rhs`, and
/// per-variable optional lower bounds (`None` means free).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub objective_offset: f64,
    pub eq_matrix: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub ineq_matrix: Vec<Vec<f64>>,
    pub ineq_rhs: Vec<f64>,
    pub lower_bounds: Vec<Option<f64>>,
    pub variable_labels: Vec<String>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Shape and finiteness checks for the canonical form.
    pub fn validate(&self) -> bool {
        let n = self.num_vars();
        self.lower_bounds.len() == n
            && self.variable_labels.len() == n
            && self.eq_matrix.len() == self.eq_rhs.len()
            && self.ineq_matrix.len() == self.ineq_rhs.len()
            && self.eq_matrix.iter().all(|r| r.len() == n)
            && self.ineq_matrix.iter().all(|r| r.len() == n)
            && self
                .eq_matrix
                .iter()
                .chain(self.ineq_matrix.iter())
                .flatten()
                .all(|v| v.is_finite())
            && self.objective.iter().all(|v| v.is_finite())
    }
}

/// Residue-class sums s_0..s_{q-1}: nonnegative, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SVector {
    pub s: Vec<f64>,
}

impl SVector {
    pub fn new(inst: &ProblemInstance, s: Vec<f64>, tol: f64) -> Result<Self> {
        if s.len() != inst.q() as usize {
            return Err(Error::BadSLength {
                got: s.len(),
                expected: inst.q() as usize,
            });
        }
        let sum: f64 = s.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::ConstraintViolation {
                k: 0,
                residual: (sum - 1.0).abs(),
            });
        }
        if let Some((r, &v)) = s
            .iter()
            .enumerate()
            .find(|&(_, &v)| v < -tol)
        {
            return Err(Error::InfeasibleB { r, min: v });
        }
        Ok(Self { s })
    }
}

/// Breakpoint heights b_1..b_{p-1}; empty when p = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BVector {
    pub b: Vec<f64>,
}

impl BVector {
    pub fn new(inst: &ProblemInstance, b: Vec<f64>) -> Result<Self> {
        let expected = inst.p() as usize - 1;
        if b.len() != expected {
            return Err(Error::BadBLength {
                got: b.len(),
                expected,
            });
        }
        Ok(Self { b })
    }

    /// 1 + 2 sum_k b_k cos(2 pi r k / q), the residue polynomial of Problem 2.
    pub fn residue_polynomial(&self, inst: &ProblemInstance, r: u32) -> f64 {
        let q = inst.q();
        let mut acc = 1.0;
        for (i, &bk) in self.b.iter().enumerate() {
            let k = (i + 1) as u64;
            acc += 2.0 * bk * cos_term(r as u64, k, q);
        }
        acc
    }

    pub fn is_feasible(&self, inst: &ProblemInstance, tol: f64) -> bool {
        (0..inst.q()).all(|r| self.residue_polynomial(inst, r) >= -tol)
    }
}

/// Problem 1: maximize s_0 over nonnegative s summing to 1 with the
/// cosine moment conditions. Rows for k and q-k are identical, so only
/// k = p..floor(q/2) are kept.
pub fn make_lp1(inst: &ProblemInstance) -> LinearProgram {
    let q = inst.q();
    let p = inst.p();
    let n = q as usize;

    let mut objective = vec![0.0; n];
    objective[0] = 1.0;

    let mut eq_matrix = vec![vec![1.0; n]];
    let mut eq_rhs = vec![1.0];
    for k in p..=q / 2 {
        eq_matrix.push((0..q).map(|r| cos_term(r as u64, k as u64, q)).collect());
        eq_rhs.push(0.0);
    }

    LinearProgram {
        objective,
        objective_offset: 0.0,
        eq_matrix,
        eq_rhs,
        ineq_matrix: vec![],
        ineq_rhs: vec![],
        lower_bounds: vec![Some(0.0); n],
        variable_labels: (0..q).map(|r| format!("s_{r}")).collect(),
    }
}

/// Same as [`make_lp1`] but keeping the duplicate rows k = p..q-p.
/// Used only to confirm that deduplication does not change the optimum.
pub fn make_lp1_full(inst: &ProblemInstance) -> LinearProgram {
    let q = inst.q();
    let p = inst.p();
    let mut lp = make_lp1(inst);
    lp.eq_matrix.truncate(1);
    lp.eq_rhs.truncate(1);
    for k in p..=q - p {
        lp.eq_matrix
            .push((0..q).map(|r| cos_term(r as u64, k as u64, q)).collect());
        lp.eq_rhs.push(0.0);
    }
    lp
}

/// Problem 2: maximize (1/q)(1 + 2 sum b_k) over free b_1..b_{p-1}
/// subject to the residue polynomial being nonnegative at every r.
pub fn make_lp2(inst: &ProblemInstance) -> LinearProgram {
    let q = inst.q();
    let p = inst.p();
    let n = p as usize - 1;
    let qf = q as f64;

    let objective = vec![2.0 / qf; n];
    let mut ineq_matrix = Vec::with_capacity(q as usize);
    let mut ineq_rhs = Vec::with_capacity(q as usize);
    for r in 0..q {
        ineq_matrix.push(
            (1..p)
                .map(|k| 2.0 * cos_term(r as u64, k as u64, q))
                .collect(),
        );
        ineq_rhs.push(-1.0);
    }

    LinearProgram {
        objective,
        objective_offset: 1.0 / qf,
        eq_matrix: vec![],
        eq_rhs: vec![],
        ineq_matrix,
        ineq_rhs,
        lower_bounds: vec![None; n],
        variable_labels: (1..p).map(|k| format!("b_{k}")).collect(),
    }
}

/// Discrete cosine inversion: the symmetrized residue sums
/// (s_r + s_{q-r})/2 = (1/q)(1 + 2 sum_k b_k cos(2 pi r k / q)),
/// using b_0 = 1 and b_p = ... = b_{q-p} = 0.
pub fn s_from_b(inst: &ProblemInstance, b: &BVector, tol: f64) -> Result<Vec<f64>> {
    let q = inst.q();
    let qf = q as f64;
    let mut out = Vec::with_capacity(q as usize);
    for r in 0..q {
        let v = b.residue_polynomial(inst, r) / qf;
        if v < -tol {
            return Err(Error::InfeasibleB {
                r: r as usize,
                min: v,
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// Forward cosine sums b_k = sum_r s_r cos(2 pi r k / q).
///
/// Returns b_1..b_{p-1} together with the residuals |b_k| for
/// k = p..q-p, which must vanish for a feasible s.
pub fn b_from_s(
    inst: &ProblemInstance,
    s: &SVector,
    tol: f64,
) -> Result<(BVector, Vec<f64>)> {
    let q = inst.q();
    let p = inst.p();
    let forward = |k: u32| -> f64 {
        s.s.iter()
            .enumerate()
            .map(|(r, &sr)| sr * cos_term(r as u64, k as u64, q))
            .sum()
    };

    let b: Vec<f64> = (1..p).map(forward).collect();
    let mut residuals = Vec::new();
    for k in p..=q - p {
        let v = forward(k).abs();
        if v > tol {
            return Err(Error::ConstraintViolation {
                k: k as usize,
                residual: v,
            });
        }
        residuals.push(v);
    }
    Ok((BVector { b }, residuals))
}
