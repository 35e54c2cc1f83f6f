//! Output formatting: binary64 round-trip numbers, the compute record in
//! JSON with stable key order, and CSV conventions (`.` decimals, `,`
//! separators, `\n` line endings).

use serde::{Deserialize, Serialize};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub lp1_vs_lp2: f64,
    pub lp_vs_closed: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeRecord {
    pub p: u32,
    pub q: u32,
    pub h: f64,
    pub method: String,
    pub value: f64,
    pub breakpoints: Vec<f64>,
    pub residuals: Residuals,
}

impl ComputeRecord {
    /// Fixed key order and 17-significant-digit numbers; emitting a
    /// parsed record reproduces the bytes exactly.
    pub fn to_json(&self) -> String {
        let bp = self
            .breakpoints
            .iter()
            .map(|&v| fmt_f64(v))
            .collect::<Vec<_>>()
            .join(",");
        let closed = self
            .residuals
            .lp_vs_closed
            .map(fmt_f64)
            .unwrap_or_else(|| "null".into());
        format!(
            "{{\"p\":{},\"q\":{},\"h\":{},\"method\":\"{}\",\"value\":{},\"breakpoints\":[{}],\"residuals\":{{\"lp1_vs_lp2\":{},\"lp_vs_closed\":{}}}}}",
            self.p,
            self.q,
            fmt_f64(self.h),
            self.method,
            fmt_f64(self.value),
            bp,
            fmt_f64(self.residuals.lp1_vs_lp2),
            closed,
        )
    }

    pub fn to_csv(&self) -> String {
        let bp = self
            .breakpoints
            .iter()
            .map(|&v| fmt_f64(v))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "p,q,h,method,value,breakpoints,lp1_vs_lp2,lp_vs_closed\n{},{},{},{},{},{},{},{}\n",
            self.p,
            self.q,
            fmt_f64(self.h),
            self.method,
            fmt_f64(self.value),
            bp,
            fmt_f64(self.residuals.lp1_vs_lp2),
            fmt_opt(self.residuals.lp_vs_closed),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_bytes() {
        let rec = ComputeRecord {
            p: 2,
            q: 5,
            h: 0.4,
            method: "all".into(),
            value: 0.447_213_595_499_957_94,
            breakpoints: vec![1.0, 0.618_033_988_749_894_9, 0.0],
            residuals: Residuals {
                lp1_vs_lp2: 1.1e-16,
                lp_vs_closed: None,
            },
        };
        let text = rec.to_json();
        let parsed: ComputeRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
    }

    #[test]
    fn fmt_f64_round_trips() {
        for &x in &[0.4, 1.0 / 3.0, 5f64.sqrt().recip(), 1e-300, 0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
