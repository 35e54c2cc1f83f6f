//! Exact formulas for A(p/q) in every case solved in closed form:
//! p = 1 (Stechkin), p = 2 with q odd, q = 2p + 1, and p = 3 with
//! q not divisible by 3 via the three-node quadrature formula.

use crate::error::{Error, Result};
use crate::problems::ProblemInstance;

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormSource {
    Stechkin,
    Theorem3,
    Theorem4,
    Theorem5,
}

/// A(p/q) from a closed form, with the extremal breakpoints b_0..b_p
/// when the formula provides them.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormResult {
    pub value: f64,
    pub source: ClosedFormSource,
    pub breakpoints: Option<Vec<f64>>,
    /// Optimal residue-class sums (s_0*, s_1*), available for q = 2p + 1.
    pub schedule: Option<(f64, f64)>,
}

/// Weights of the three-node quadrature formula reproducing the discrete
/// mean of 1, cos(2 pi r / q), cos(4 pi r / q) from nodes 0, r0, r0 + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureWeights {
    pub r0: u32,
    pub gamma0: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// A(1/q) = 1/q; the extremal function is the triangle with heights (1, 0).
pub fn stechkin_value(q: u32) -> ClosedFormResult {
    assert!(q >= 2);
    ClosedFormResult {
        value: 1.0 / q as f64,
        source: ClosedFormSource::Stechkin,
        breakpoints: Some(vec![1.0, 0.0]),
        schedule: None,
    }
}

/// A(2/q) = (1 + cos(pi/q)) / (q cos(pi/q)) for odd q >= 5,
/// with b_1* = 1 / (2 cos(pi/q)).
pub fn theorem3_value(q: u32) -> Result<ClosedFormResult> {
    if q % 2 == 0 {
        return Err(Error::InvalidQ {
            q,
            reason: "q must be odd for h = 2/q",
        });
    }
    if q < 5 {
        return Err(Error::InvalidQ {
            q,
            reason: "q >= 5 required for h = 2/q",
        });
    }
    let c = (PI / q as f64).cos();
    let b1 = 1.0 / (2.0 * c);
    Ok(ClosedFormResult {
        value: (1.0 + c) / (q as f64 * c),
        source: ClosedFormSource::Theorem3,
        breakpoints: Some(vec![1.0, b1, 0.0]),
        schedule: None,
    })
}

/// A(p/(2p+1)) = cos(pi/(2p+1)) / (1 + cos(pi/(2p+1))), with breakpoints
/// b_k* = (cos(pi/q) + cos(2 pi k / q)) / (1 + cos(pi/q)) and the optimal
/// schedule s_0* = cos(pi/q)/(1+cos(pi/q)), s_1* = 1/(1+cos(pi/q)).
pub fn theorem4_value(p: u32) -> ClosedFormResult {
    assert!(p >= 1);
    let q = 2 * p + 1;
    let qf = q as f64;
    let c = (PI / qf).cos();
    let breakpoints: Vec<f64> = (0..=p)
        .map(|k| (c + (2.0 * PI * k as f64 / qf).cos()) / (1.0 + c))
        .collect();
    ClosedFormResult {
        value: c / (1.0 + c),
        source: ClosedFormSource::Theorem4,
        breakpoints: Some(breakpoints),
        schedule: Some((c / (1.0 + c), 1.0 / (1.0 + c))),
    }
}

/// Quadrature weights for p = 3: r0 = floor(q/3), determinant-ratio
/// weights, all positive and summing to one.
pub fn quadrature_weights(q: u32) -> Result<QuadratureWeights> {
    if q % 3 == 0 {
        return Err(Error::InvalidQ {
            q,
            reason: "q must not be divisible by 3",
        });
    }
    if q < 7 {
        return Err(Error::InvalidQ {
            q,
            reason: "q >= 7 required for h = 3/q",
        });
    }
    let r0 = q / 3;
    let qf = q as f64;
    let c1 = (2.0 * PI * r0 as f64 / qf).cos();
    let c2 = (2.0 * PI * (r0 + 1) as f64 / qf).cos();
    let d1 = (4.0 * PI * r0 as f64 / qf).cos();
    let d2 = (4.0 * PI * (r0 + 1) as f64 / qf).cos();

    let delta = c1 * d2 - c2 * d1;
    let delta1 = c2 - d2;
    let delta2 = d1 - c1;
    let g1p = delta1 / delta;
    let g2p = delta2 / delta;
    let gamma0 = 1.0 / (1.0 + g1p + g2p);
    Ok(QuadratureWeights {
        r0,
        gamma0,
        gamma1: g1p * gamma0,
        gamma2: g2p * gamma0,
        delta,
        delta1,
        delta2,
    })
}

impl QuadratureWeights {
    /// Largest exactness residual over the basis 1, cos(2 pi r/q), cos(4 pi r/q):
    /// |gamma_0 f(0) + gamma_1 f(r0) + gamma_2 f(r0+1) - mean_r f(r)|.
    pub fn exactness_residual(&self, q: u32) -> f64 {
        let qf = q as f64;
        let mut worst: f64 = 0.0;
        for freq in 0..=2u32 {
            let f = |r: f64| (2.0 * PI * freq as f64 * r / qf).cos();
            let mean: f64 = (0..q).map(|r| f(r as f64)).sum::<f64>() / qf;
            let quad = self.gamma0 * f(0.0)
                + self.gamma1 * f(self.r0 as f64)
                + self.gamma2 * f(self.r0 as f64 + 1.0);
            worst = worst.max((quad - mean).abs());
        }
        worst
    }
}

/// A(3/q) from the quadrature bound 1/(q gamma_0), with breakpoints
/// b_1* = -(c1 + c2)/(1 + 2 c1 c2), b_2* = (1/2)/(1 + 2 c1 c2)
/// where c_i = cos(2 pi (r0 + i - 1)/q).
pub fn theorem5_value(q: u32) -> Result<ClosedFormResult> {
    let w = quadrature_weights(q)?;
    let qf = q as f64;
    let c1 = (2.0 * PI * w.r0 as f64 / qf).cos();
    let c2 = (2.0 * PI * (w.r0 + 1) as f64 / qf).cos();
    let denom = 1.0 + 2.0 * c1 * c2;
    let value = (1.0 + (1.0 - 2.0 * (c1 + c2)) / denom) / qf;
    let b1 = -(c1 + c2) / denom;
    let b2 = 0.5 / denom;
    Ok(ClosedFormResult {
        value,
        source: ClosedFormSource::Theorem5,
        breakpoints: Some(vec![1.0, b1, b2, 0.0]),
        schedule: None,
    })
}

/// Routes an instance to the applicable closed form, preferring
/// Stechkin, then p = 2, then q = 2p + 1, then p = 3. Returns `None`
/// when no catalogued formula applies.
pub fn dispatch_closed_form(inst: &ProblemInstance) -> Option<ClosedFormResult> {
    let (p, q) = (inst.p(), inst.q());
    if p == 1 {
        return Some(stechkin_value(q));
    }
    if p == 2 && q >= 5 {
        return theorem3_value(q).ok();
    }
    if q == 2 * p + 1 {
        return Some(theorem4_value(p));
    }
    if p == 3 && q % 3 != 0 && q >= 7 {
        return theorem5_value(q).ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_instance;

    #[test]
    fn stechkin_values() {
        assert_eq!(stechkin_value(2).value, 0.5);
        assert!((stechkin_value(3).value - 1.0 / 3.0).abs() < 1e-15);
        assert!((stechkin_value(10).value - 0.1).abs() < 1e-15);
    }

    #[test]
    fn theorem3_q5() {
        let r = theorem3_value(5).unwrap();
        assert!((r.value - 0.4472136).abs() < 1e-7);
        let b = r.breakpoints.unwrap();
        assert!((b[1] - 0.6180340).abs() < 1e-7);
    }

    #[test]
    fn theorem3_q7() {
        let r = theorem3_value(7).unwrap();
        assert!((r.value - 0.3014166092).abs() < 1e-9);
    }

    #[test]
    fn theorem3_rejects_even_and_small() {
        assert!(theorem3_value(6).is_err());
        assert!(theorem3_value(3).is_err());
    }

    #[test]
    fn theorem3_large_q_limit() {
        // A(2/q) / (2/q) -> 1 as q grows, the leading-order behavior
        let q = 100_001u32;
        let r = theorem3_value(q).unwrap();
        let ratio = r.value / (2.0 / q as f64);
        assert!((ratio - 1.0).abs() < 1e-8);
    }

    #[test]
    fn theorem4_p1_matches_stechkin() {
        let r = theorem4_value(1);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn theorem4_p2_matches_theorem3() {
        let a = theorem4_value(2).value;
        let b = theorem3_value(5).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn theorem4_p3_matches_theorem5() {
        let a = theorem4_value(3).value;
        let b = theorem5_value(7).unwrap().value;
        assert!((a - b).abs() < 1e-12);
        assert!((a - 0.4739524).abs() < 1e-7);
    }

    #[test]
    fn theorem4_breakpoint_endpoints() {
        for p in 1..=12 {
            let b = theorem4_value(p).breakpoints.unwrap();
            assert!((b[0] - 1.0).abs() < 1e-12);
            assert!(b[p as usize].abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_q7_gamma0() {
        let w = quadrature_weights(7).unwrap();
        let a = theorem5_value(7).unwrap().value;
        assert!((w.gamma0 - 1.0 / (7.0 * a)).abs() < 1e-12);
        assert!((w.gamma0 - 0.3014169).abs() < 1e-6);
    }

    #[test]
    fn quadrature_q8() {
        let w = quadrature_weights(8).unwrap();
        assert_eq!(w.r0, 2);
        let expect = 1.0 / (2.0 + 2f64.sqrt());
        assert!((w.gamma0 - expect).abs() < 1e-12);
        assert!((w.gamma0 - 0.2928932).abs() < 1e-7);
    }

    #[test]
    fn quadrature_exactness_and_signs() {
        for q in 7..=100u32 {
            if q % 3 == 0 {
                continue;
            }
            let w = quadrature_weights(q).unwrap();
            assert!(w.gamma0 > 0.0 && w.gamma1 > 0.0 && w.gamma2 > 0.0, "q = {q}");
            assert!((w.gamma0 + w.gamma1 + w.gamma2 - 1.0).abs() < 1e-12);
            assert!(w.delta < 0.0 && w.delta1 < 0.0 && w.delta2 < 0.0, "q = {q}");
            assert!(w.exactness_residual(q) < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn quadrature_rejects_multiples_of_3() {
        assert!(quadrature_weights(9).is_err());
        assert!(theorem5_value(12).is_err());
    }

    #[test]
    fn theorem5_q8_breakpoints() {
        let r = theorem5_value(8).unwrap();
        assert!((r.value - (2.0 + 2f64.sqrt()) / 8.0).abs() < 1e-15);
        let b = r.breakpoints.unwrap();
        assert!((b[1] - 0.7071068).abs() < 1e-7);
        assert!((b[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn theorem5_polynomial_zeros_at_nodes() {
        for q in [7u32, 8, 10, 11, 13, 14] {
            let r = theorem5_value(q).unwrap();
            let b = r.breakpoints.as_ref().unwrap();
            let r0 = q / 3;
            for node in [r0, r0 + 1] {
                let x = 2.0 * PI * node as f64 / q as f64;
                let poly = 1.0 + 2.0 * b[1] * x.cos() + 2.0 * b[2] * (2.0 * x).cos();
                assert!(poly.abs() < 1e-12, "q = {q}, node = {node}");
            }
        }
    }

    #[test]
    fn dispatch_routing() {
        let r = dispatch_closed_form(&make_instance(1, 6).unwrap()).unwrap();
        assert_eq!(r.source, ClosedFormSource::Stechkin);
        assert!((r.value - 1.0 / 6.0).abs() < 1e-15);

        assert!(dispatch_closed_form(&make_instance(4, 11).unwrap()).is_none());

        let r = dispatch_closed_form(&make_instance(3, 7).unwrap()).unwrap();
        assert_eq!(r.source, ClosedFormSource::Theorem4);
        let t5 = theorem5_value(7).unwrap();
        assert!((r.value - t5.value).abs() < 1e-12);
    }
}
