//! The `verify` subcommand: runs every cross-check the library supports
//! on the instance catalog and reports one line per comparison. Output
//! is fully deterministic so repeated runs are byte-identical.

use std::fmt::Write as _;

use turan_core::closed_forms::dispatch_closed_form;
use turan_core::extremal::{from_breakpoints, validate_membership};
use turan_core::oracle::{lp1_vertex_enumeration, lp2_grid_search};
use turan_core::{
    certificate_check, make_instance, make_lp1, make_lp2, solve, SolveStatus,
};

use crate::output::fmt_f64;

pub struct VerifyOutcome {
    pub report: String,
    pub failures: u32,
}

pub fn run_verify(max_q: u32, tol: f64) -> VerifyOutcome {
    let mut report = String::new();
    let mut checks = 0u32;
    let mut failures = 0u32;

    let mut record = |line: String, ok: bool, report: &mut String| {
        checks += 1;
        if !ok {
            failures += 1;
        }
        let _ = writeln!(report, "{} {line}", if ok { "ok  " } else { "FAIL" });
    };

    let _ = writeln!(report, "verify max_q={max_q} tol={}", fmt_f64(tol));

    let grid_tol = tol.max(1e-5);
    for q in 2..=max_q {
        for p in 1..=q / 2 {
            let Ok(inst) = make_instance(p, q) else {
                continue;
            };
            let lp1 = make_lp1(&inst);
            let lp2 = make_lp2(&inst);
            // tol is the one global knob: it is both the solver pivot
            // tolerance and the comparison threshold
            let (s1, s2) = match (solve(&lp1, tol), solve(&lp2, tol)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    record(
                        format!("solve p={p} q={q} solver error"),
                        false,
                        &mut report,
                    );
                    continue;
                }
            };
            if s1.status != SolveStatus::Optimal || s2.status != SolveStatus::Optimal {
                record(
                    format!("solve p={p} q={q} non-optimal status"),
                    false,
                    &mut report,
                );
                continue;
            }

            let d = (s1.value - s2.value).abs();
            record(
                format!("lp1_vs_lp2 p={p} q={q} residual={}", fmt_f64(d)),
                d <= tol,
                &mut report,
            );

            let cert1 = certificate_check(&lp1, &s1, tol.max(1e-9));
            record(
                format!("certificate_lp1 p={p} q={q}"),
                cert1,
                &mut report,
            );
            let cert2 = certificate_check(&lp2, &s2, tol.max(1e-9));
            record(
                format!("certificate_lp2 p={p} q={q}"),
                cert2,
                &mut report,
            );

            if p == 1 {
                let d = (s1.value - 1.0 / q as f64).abs();
                record(
                    format!("stechkin_lp1 p=1 q={q} residual={}", fmt_f64(d)),
                    d <= tol,
                    &mut report,
                );
            }

            if let Some(cf) = dispatch_closed_form(&inst) {
                let d = (cf.value - s2.value).abs().max((cf.value - s1.value).abs());
                record(
                    format!("closed_vs_lp p={p} q={q} residual={}", fmt_f64(d)),
                    d <= tol,
                    &mut report,
                );

                if let Some(bp) = cf.breakpoints {
                    let f = from_breakpoints(q, bp);
                    match validate_membership(&f, 10 * q, tol.max(1e-10)) {
                        Ok(rep) => {
                            let ok = rep.sum_defect <= rep.tail_bound
                                && rep.max_on_support_gap == 0.0;
                            record(
                                format!(
                                    "membership p={p} q={q} min_alpha={} sum_defect={}",
                                    fmt_f64(rep.min_alpha),
                                    fmt_f64(rep.sum_defect)
                                ),
                                ok,
                                &mut report,
                            );
                        }
                        Err(e) => {
                            record(
                                format!("membership p={p} q={q} error: {e}"),
                                false,
                                &mut report,
                            );
                        }
                    }
                }
            }

            if q <= 12 {
                match lp1_vertex_enumeration(&inst) {
                    Ok(oracle) => {
                        let d = (oracle.value - s1.value).abs();
                        record(
                            format!("oracle_vertex p={p} q={q} residual={}", fmt_f64(d)),
                            d <= tol.max(1e-9),
                            &mut report,
                        );
                    }
                    Err(e) => {
                        record(
                            format!("oracle_vertex p={p} q={q} error: {e}"),
                            false,
                            &mut report,
                        );
                    }
                }
            }

            if (p == 2 || p == 3) && q <= 20 {
                let steps = if p == 2 { 1001 } else { 301 };
                match lp2_grid_search(&inst, 2.0, steps) {
                    Ok(oracle) => {
                        let d = (oracle.value - s2.value).abs();
                        record(
                            format!("oracle_grid p={p} q={q} residual={}", fmt_f64(d)),
                            d <= grid_tol,
                            &mut report,
                        );
                    }
                    Err(e) => {
                        record(
                            format!("oracle_grid p={p} q={q} error: {e}"),
                            false,
                            &mut report,
                        );
                    }
                }
            }
        }
    }

    // overlap identities among the closed forms
    if max_q >= 7 {
        use turan_core::closed_forms::{
            stechkin_value, theorem3_value, theorem4_value, theorem5_value,
        };
        let pairs = [
            (
                "theorem4(2)=theorem3(5)",
                theorem4_value(2).value,
                theorem3_value(5).map(|r| r.value),
            ),
            (
                "theorem4(3)=theorem5(7)",
                theorem4_value(3).value,
                theorem5_value(7).map(|r| r.value),
            ),
            (
                "theorem4(1)=stechkin(3)",
                theorem4_value(1).value,
                Ok(stechkin_value(3).value),
            ),
        ];
        for (name, a, b) in pairs {
            match b {
                Ok(b) => {
                    let d = (a - b).abs();
                    record(
                        format!("overlap {name} residual={}", fmt_f64(d)),
                        d <= tol.max(1e-12),
                        &mut report,
                    );
                }
                Err(e) => record(format!("overlap {name} error: {e}"), false, &mut report),
            }
        }
    }

    let _ = writeln!(report, "summary: {checks} checks, {failures} failures");
    VerifyOutcome { report, failures }
}
