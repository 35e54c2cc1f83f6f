//! Asymptotic expansions of A(h) for the h = 2/q and h = 3/q families,
//! remainder-order fits against the closed forms, and the A(h) = h + O(h^3)
//! bound with constant at most 16.

use crate::closed_forms::{theorem3_value, theorem5_value};
use crate::error::{Error, Result};

use std::f64::consts::PI;

/// Expansion family with its arithmetic condition on q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionFamily {
    /// h = 2/q, q odd: A(h) = h + (pi^2/16) h^3 + (5 pi^4/768) h^5 + O(h^7)
    TwoOverQOdd,
    /// h = 3/q, q = 3v + 1: h^4 coefficient -16 pi^3 sqrt(3)/2187, O(h^6)
    ThreeOverQ1Mod3,
    /// h = 3/q, q = 3v + 2: h^4 coefficient +16 pi^3 sqrt(3)/2187, O(h^6)
    ThreeOverQ2Mod3,
}

impl ExpansionFamily {
    /// (power of h, coefficient) pairs, leading term always (1, 1).
    pub fn terms(&self) -> Vec<(i32, f64)> {
        let s3 = 3f64.sqrt();
        match self {
            ExpansionFamily::TwoOverQOdd => vec![
                (1, 1.0),
                (3, PI * PI / 16.0),
                (5, 5.0 * PI.powi(4) / 768.0),
            ],
            ExpansionFamily::ThreeOverQ1Mod3 => vec![
                (1, 1.0),
                (3, 16.0 * PI * PI / 243.0),
                (4, -16.0 * PI.powi(3) * s3 / 2187.0),
                (5, 448.0 * PI.powi(4) / 59049.0),
            ],
            ExpansionFamily::ThreeOverQ2Mod3 => vec![
                (1, 1.0),
                (3, 16.0 * PI * PI / 243.0),
                (4, 16.0 * PI.powi(3) * s3 / 2187.0),
                (5, 448.0 * PI.powi(4) / 59049.0),
            ],
        }
    }

    pub fn numerator(&self) -> u32 {
        match self {
            ExpansionFamily::TwoOverQOdd => 2,
            _ => 3,
        }
    }

    /// Order of the omitted remainder term.
    pub fn remainder_order(&self) -> i32 {
        match self {
            ExpansionFamily::TwoOverQOdd => 7,
            _ => 6,
        }
    }

    pub fn accepts_q(&self, q: u32) -> bool {
        match self {
            ExpansionFamily::TwoOverQOdd => q % 2 == 1,
            ExpansionFamily::ThreeOverQ1Mod3 => q % 3 == 1,
            ExpansionFamily::ThreeOverQ2Mod3 => q % 3 == 2,
        }
    }

    /// Closed-form A(p/q) for a q belonging to the family.
    pub fn closed_value(&self, q: u32) -> Result<f64> {
        self.check_q(q)?;
        match self {
            ExpansionFamily::TwoOverQOdd => Ok(theorem3_value(q)?.value),
            _ => Ok(theorem5_value(q)?.value),
        }
    }

    fn check_q(&self, q: u32) -> Result<()> {
        if !self.accepts_q(q) {
            return Err(Error::FamilyMismatch {
                p: self.numerator(),
                q,
            });
        }
        Ok(())
    }
}

/// Evaluates the stored expansion terms at h.
pub fn expansion_eval(family: ExpansionFamily, h: f64) -> f64 {
    family
        .terms()
        .iter()
        .map(|&(pow, coef)| coef * h.powi(pow))
        .sum()
}

/// Expansion value at h = p/q after checking the residue condition.
pub fn expansion_value(family: ExpansionFamily, q: u32) -> Result<f64> {
    family.check_q(q)?;
    Ok(expansion_eval(family, family.numerator() as f64 / q as f64))
}

/// Least-squares slope of log|A_closed(h) - expansion(h)| vs log h over
/// the given q values; the observed remainder order.
pub fn remainder_order_fit(family: ExpansionFamily, q_list: &[u32]) -> Result<f64> {
    remainder_order_fit_with(family, q_list, |q| family.closed_value(q))
}

/// Same fit against an arbitrary reference for A(p/q).
pub fn remainder_order_fit_with(
    family: ExpansionFamily,
    q_list: &[u32],
    reference: impl Fn(u32) -> Result<f64>,
) -> Result<f64> {
    assert!(q_list.len() >= 5, "need at least 5 q values");
    let (min_q, max_q) = q_list
        .iter()
        .fold((u32::MAX, 0), |(lo, hi), &q| (lo.min(q), hi.max(q)));
    assert!(max_q >= 4 * min_q, "q values must span a factor of 4");

    let mut xs = Vec::with_capacity(q_list.len());
    let mut ys = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let h = family.numerator() as f64 / q as f64;
        let resid = (reference(q)? - expansion_eval(family, h)).abs();
        if resid < 1e-300 {
            return Err(Error::DegenerateFit { q });
        }
        xs.push(h.ln());
        ys.push(resid.ln());
    }
    Ok(ols_slope(&xs, &ys))
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Report for the A(h) = h + O(h^3) bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub max_ratio: f64,
    pub min_excess: f64,
    pub pass: bool,
}

/// Checks (A(h) - h)/h^3 <= 16 and A(h) >= h - 1e-12 over the inputs.
pub fn theorem1_bound_check(points: &[(u32, u32, f64)]) -> BoundReport {
    let mut max_ratio = f64::NEG_INFINITY;
    let mut min_excess = f64::INFINITY;
    for &(p, q, a) in points {
        let h = p as f64 / q as f64;
        max_ratio = max_ratio.max((a - h) / (h * h * h));
        min_excess = min_excess.min(a - h);
    }
    BoundReport {
        max_ratio,
        min_excess,
        pass: max_ratio <= 16.0 && min_excess >= -1e-12,
    }
}
