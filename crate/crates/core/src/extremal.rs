//! The extremal piecewise-linear function: construction from breakpoint
//! heights, pointwise evaluation, closed-formula Fourier coefficients,
//! and validation of the class conditions (nonnegative spectrum, unit
//! coefficient sum, support inside [-h, h]).

use crate::error::{Error, Result};
use crate::problems::{cos_term, s_from_b, BVector, ProblemInstance};

use std::f64::consts::PI;

/// Even 1-periodic piecewise-linear function with vertices (k/q, heights[k])
/// for k = 0..p, vanishing on [p/q, 1/2].
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalFunction {
    q: u32,
    heights: Vec<f64>,
}

impl ExtremalFunction {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        (self.heights.len() - 1) as u32
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    fn interior(&self) -> &[f64] {
        &self.heights[1..self.heights.len() - 1]
    }
}

/// Assembles heights (1, b_1, ..., b_{p-1}, 0) after checking feasibility.
pub fn build_extremal(inst: &ProblemInstance, b: &BVector) -> Result<ExtremalFunction> {
    s_from_b(inst, b, crate::problems::DEFAULT_TOL)?;
    let mut heights = Vec::with_capacity(inst.p() as usize + 1);
    heights.push(1.0);
    heights.extend_from_slice(&b.b);
    heights.push(0.0);
    Ok(ExtremalFunction {
        q: inst.q(),
        heights,
    })
}

/// Builds directly from a full breakpoint vector b_0..b_p (b_0 = 1, b_p = 0),
/// as produced by the closed forms.
pub fn from_breakpoints(q: u32, heights: Vec<f64>) -> ExtremalFunction {
    assert!(heights.len() >= 2);
    assert!((heights[0] - 1.0).abs() < 1e-9 && heights[heights.len() - 1].abs() < 1e-9);
    ExtremalFunction { q, heights }
}

/// Piecewise-linear evaluation; x is reduced to [-1/2, 1/2) first.
pub fn phi_eval(f: &ExtremalFunction, x: f64) -> f64 {
    let x = x - x.round(); // nearest-integer reduction
    let t = x.abs() * f.q as f64;
    let p = f.p() as f64;
    if t >= p {
        return 0.0;
    }
    let k = t.floor() as usize;
    let bk = f.heights[k];
    let bk1 = f.heights[k + 1];
    bk + (bk - bk1) * (k as f64 - t)
}

/// Fourier coefficient of the extremal function:
/// alpha_0 = (1/q)(1 + 2 sum b_k),
/// alpha_n = 2q (sin(pi n / q) / (pi n))^2 (1 + 2 sum b_k cos(2 pi n k / q)).
pub fn fourier_alpha(f: &ExtremalFunction, n: u32) -> f64 {
    let qf = f.q as f64;
    if n == 0 {
        return (1.0 + 2.0 * f.interior().iter().sum::<f64>()) / qf;
    }
    let nf = n as f64;
    // sin^2(pi n / q) depends only on n mod q; reducing keeps the zeros exact
    let s = (PI * (n % f.q) as f64 / qf).sin() / (PI * nf);
    let mut poly = 1.0;
    for (i, &bk) in f.interior().iter().enumerate() {
        poly += 2.0 * bk * cos_term(n as u64, (i + 1) as u64, f.q);
    }
    2.0 * qf * s * s * poly
}

/// Validation report for the class conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    /// Smallest coefficient over n = 0..N and the n attaining it.
    pub min_alpha: f64,
    pub min_alpha_at: usize,
    /// |sum_{n<=N} alpha_n - 1|.
    pub sum_defect: f64,
    /// Analytic bound on the omitted tail: 2q / (pi^2 N).
    pub tail_bound: f64,
    /// max |phi(x)| over a 1000-point grid of [p/q, 1/2].
    pub max_on_support_gap: f64,
    pub truncation: u32,
}

/// Checks conditions 1)-4): nonnegative spectrum up to N with tail
/// accounting, coefficient sum near 1, and vanishing outside [-h, h].
pub fn validate_membership(
    f: &ExtremalFunction,
    truncation: u32,
    tol: f64,
) -> Result<MembershipReport> {
    let n_max = truncation;
    let mut min_alpha = f64::INFINITY;
    let mut min_at = 0usize;
    let mut sum = 0.0;
    for n in 0..=n_max {
        let a = fourier_alpha(f, n);
        sum += a;
        if a < min_alpha {
            min_alpha = a;
            min_at = n as usize;
        }
    }
    let tail_bound = 2.0 * f.q as f64 / (PI * PI * n_max as f64);

    let h = f.p() as f64 / f.q as f64;
    let mut max_gap: f64 = 0.0;
    for i in 0..1000 {
        let x = h + (0.5 - h) * i as f64 / 999.0;
        max_gap = max_gap.max(phi_eval(f, x).abs());
    }

    if min_alpha < -tol {
        return Err(Error::MembershipViolation {
            n: min_at,
            min_alpha,
        });
    }
    Ok(MembershipReport {
        min_alpha,
        min_alpha_at: min_at,
        sum_defect: (sum - 1.0).abs(),
        tail_bound,
        max_on_support_gap: max_gap,
        truncation: n_max,
    })
}

/// Stechkin's triangle max{1 - |x|/h, 0} for h = p/q, with its analytic
/// spectrum a_0 = h, a_n = 2h (sin(pi n h) / (pi n h))^2. For p >= 2 this
/// member of the class is suboptimal; for p = 1 it is extremal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StechkinTriangle {
    pub p: u32,
    pub q: u32,
}

impl StechkinTriangle {
    pub fn new(inst: &ProblemInstance) -> Self {
        Self {
            p: inst.p(),
            q: inst.q(),
        }
    }

    pub fn h(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn coefficient(&self, n: u32) -> f64 {
        let h = self.h();
        if n == 0 {
            return h;
        }
        let t = PI * n as f64 * h;
        let s = t.sin() / t;
        2.0 * h * s * s
    }

    /// The triangle as a breakpoint function: heights 1 - k/p at k/q.
    pub fn as_extremal(&self) -> ExtremalFunction {
        let pf = self.p as f64;
        ExtremalFunction {
            q: self.q,
            heights: (0..=self.p).map(|k| 1.0 - k as f64 / pf).collect(),
        }
    }
}

pub fn stechkin_triangle(inst: &ProblemInstance) -> StechkinTriangle {
    StechkinTriangle::new(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_instance;

    fn phi_2_5() -> ExtremalFunction {
        let inst = make_instance(2, 5).unwrap();
        // b_1* = 1 / (2 cos(pi/5)) = 0.618034...
        let b = BVector::new(&inst, vec![1.0 / (2.0 * (PI / 5.0).cos())]).unwrap();
        build_extremal(&inst, &b).unwrap()
    }

    #[test]
    fn build_triangle_p1() {
        let inst = make_instance(1, 4).unwrap();
        let b = BVector::new(&inst, vec![]).unwrap();
        let f = build_extremal(&inst, &b).unwrap();
        assert_eq!(f.heights(), &[1.0, 0.0]);
    }

    #[test]
    fn build_2_5() {
        let f = phi_2_5();
        assert_eq!(f.heights().len(), 3);
        assert_eq!(f.heights()[0], 1.0);
        assert!((f.heights()[1] - 0.618034).abs() < 1e-6);
        assert_eq!(f.heights()[2], 0.0);
    }

    #[test]
    fn build_3_8() {
        let inst = make_instance(3, 8).unwrap();
        let b = BVector::new(&inst, vec![2f64.sqrt() / 2.0, 0.5]).unwrap();
        let f = build_extremal(&inst, &b).unwrap();
        assert!((f.heights()[1] - 0.7071068).abs() < 1e-7);
        assert!((f.heights()[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn build_rejects_infeasible() {
        let inst = make_instance(2, 5).unwrap();
        let b = BVector::new(&inst, vec![0.9]).unwrap();
        assert!(matches!(
            build_extremal(&inst, &b),
            Err(Error::InfeasibleB { .. })
        ));
    }

    #[test]
    fn eval_at_zero_and_nodes() {
        let f = phi_2_5();
        assert_eq!(phi_eval(&f, 0.0), 1.0);
        assert!((phi_eval(&f, 0.2) - 0.618034).abs() < 1e-6);
        assert_eq!(phi_eval(&f, 0.4), 0.0);
    }

    #[test]
    fn eval_between_nodes_by_symmetry() {
        let f = phi_2_5();
        // phi(0.7) = phi(-0.3) = phi(0.3), halfway down the outer segment
        assert!((phi_eval(&f, 0.7) - 0.309017).abs() < 1e-6);
        assert!((phi_eval(&f, 0.3) - f.heights()[1] * 0.5).abs() < 1e-12);
    }

    #[test]
    fn eval_zero_on_support_gap() {
        let inst = make_instance(3, 8).unwrap();
        let b = BVector::new(&inst, vec![2f64.sqrt() / 2.0, 0.5]).unwrap();
        let f = build_extremal(&inst, &b).unwrap();
        assert_eq!(phi_eval(&f, 0.45), 0.0);
    }

    #[test]
    fn alpha0_for_triangle() {
        let inst = make_instance(1, 7).unwrap();
        let f = stechkin_triangle(&inst).as_extremal();
        assert!((fourier_alpha(&f, 0) - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_n_triangle_matches_analytic() {
        let inst = make_instance(1, 5).unwrap();
        let tri = stechkin_triangle(&inst);
        let f = tri.as_extremal();
        for n in 1..=40 {
            assert!(
                (fourier_alpha(&f, n) - tri.coefficient(n)).abs() < 1e-15,
                "n = {n}"
            );
        }
    }

    #[test]
    fn alpha_vanishes_at_multiples_of_q() {
        let f = phi_2_5();
        assert_eq!(fourier_alpha(&f, 5), 0.0);
        assert_eq!(fourier_alpha(&f, 10), 0.0);
    }

    #[test]
    fn alpha0_is_the_constant() {
        let f = phi_2_5();
        assert!((fourier_alpha(&f, 0) - 0.4472136).abs() < 1e-7);
    }

    #[test]
    fn membership_triangle_1_4() {
        let inst = make_instance(1, 4).unwrap();
        let f = stechkin_triangle(&inst).as_extremal();
        let report = validate_membership(&f, 400, 1e-10).unwrap();
        assert!(report.min_alpha >= 0.0);
        assert!(report.sum_defect <= report.tail_bound);
        assert_eq!(report.max_on_support_gap, 0.0);
    }

    #[test]
    fn membership_rejects_infeasible_heights() {
        let f = from_breakpoints(5, vec![1.0, 0.9, 0.0]);
        assert!(matches!(
            validate_membership(&f, 50, 1e-10),
            Err(Error::MembershipViolation { .. })
        ));
    }

    #[test]
    fn mean_value_identity() {
        // alpha_0 equals the trapezoid integral 2 * int_0^{p/q} phi
        let f = phi_2_5();
        let q = 5.0;
        let trapezoid: f64 = f
            .heights()
            .windows(2)
            .map(|w| (w[0] + w[1]) / (2.0 * q))
            .sum::<f64>()
            * 2.0;
        assert!((fourier_alpha(&f, 0) - trapezoid).abs() < 1e-14);
    }

    #[test]
    fn triangle_suboptimal_for_p2() {
        let inst = make_instance(2, 5).unwrap();
        let tri = stechkin_triangle(&inst);
        assert!((tri.coefficient(0) - 0.4).abs() < 1e-15);
        assert!(tri.coefficient(0) < 0.4472136);
    }

    #[test]
    fn cos_squared_limit_qualitative() {
        // normalized phi_{p,2p+1} approaches cos^2(pi x); distance decreases in p
        let dist = |p: u32| {
            let cf = crate::closed_forms::theorem4_value(p);
            let f = from_breakpoints(2 * p + 1, cf.breakpoints.unwrap());
            (0..=200)
                .map(|i| {
                    let x = -0.5 + i as f64 / 200.0;
                    let c = (PI * x).cos();
                    (phi_eval(&f, x) - c * c).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let d: Vec<f64> = [2, 4, 8, 16].iter().map(|&p| dist(p)).collect();
        assert!(d[0] > d[1] && d[1] > d[2] && d[2] > d[3], "{d:?}");
    }
}
