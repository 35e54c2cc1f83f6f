//! Command-line front end: compute A(p/q) by any route, tabulate
//! families, verify all routes against each other, and emit the extremal
//! function or its Fourier spectrum as CSV.

mod output;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{fmt_f64, fmt_opt, ComputeRecord, Residuals};
use turan_core::closed_forms::dispatch_closed_form;
use turan_core::extremal::{fourier_alpha, from_breakpoints, phi_eval, ExtremalFunction};
use turan_core::{make_instance, make_lp2, solve, ProblemInstance, SolveStatus};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_METHOD_UNAVAILABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "turan", about = "Turan extremal constants A(p/q)", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Lp1,
    Lp2,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "two_over_q")]
    TwoOverQ,
    #[value(name = "three_over_q")]
    ThreeOverQ,
    #[value(name = "p_over_2p1")]
    POver2p1,
    #[value(name = "all_small")]
    AllSmall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute A(p/q) by one route or all applicable routes
    Compute {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a family of instances with every available route
    Table {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 40)]
        max_q: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every route on the instance catalog
    Verify {
        #[arg(long, default_value_t = 12)]
        max_q: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the extremal function sampled on a uniform grid (CSV x,phi)
    EmitFunction {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 101)]
        samples: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit Fourier coefficients of the extremal function (CSV n,alpha_n)
    Fourier {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Number of coefficients; defaults to 10q
        #[arg(long)]
        terms: Option<u32>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            p,
            q,
            method,
            tol,
            format,
            out,
        } => cmd_compute(p, q, method, tol, format, out),
        Command::Table {
            family,
            max_q,
            tol,
            format,
            out,
        } => cmd_table(family, max_q, tol, format, out),
        Command::Verify { max_q, tol, out } => cmd_verify(max_q, tol, out),
        Command::EmitFunction {
            p,
            q,
            samples,
            tol,
            out,
        } => cmd_emit_function(p, q, samples, tol, out),
        Command::Fourier { p, q, terms, tol, out } => cmd_fourier(p, q, terms, tol, out),
    }
}

fn check_tol(tol: f64) -> Result<(), ExitCode> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        eprintln!("error: --tol must lie in (0, 1e-3]");
        Err(ExitCode::from(EXIT_INVALID_INPUT))
    }
}

fn instance_or_exit(p: u32, q: u32) -> Result<ProblemInstance, ExitCode> {
    if p < 1 || q < 2 {
        eprintln!("error: require p >= 1 and q >= 2");
        return Err(ExitCode::from(EXIT_INVALID_INPUT));
    }
    make_instance(p, q).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INVALID_INPUT)
    })
}

fn emit(out: Option<PathBuf>, content: &str) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, content) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID_INPUT);
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{content}");
            ExitCode::SUCCESS
        }
    }
}

/// Solves both LPs and the closed form for one instance.
struct Routes {
    lp1_value: f64,
    lp2_value: f64,
    lp2_breakpoints: Vec<f64>,
    closed: Option<turan_core::closed_forms::ClosedFormResult>,
}

fn solve_routes(inst: &ProblemInstance, tol: f64) -> Result<Routes, ExitCode> {
    let solve_one = |lp| {
        solve(&lp, tol).ok().filter(|s| s.status == SolveStatus::Optimal)
    };
    let (Some(s1), Some(s2)) = (
        solve_one(turan_core::make_lp1(inst)),
        solve_one(make_lp2(inst)),
    ) else {
        eprintln!("error: solver failed on p={} q={}", inst.p(), inst.q());
        return Err(ExitCode::from(EXIT_INVALID_INPUT));
    };
    let mut bp = Vec::with_capacity(inst.p() as usize + 1);
    bp.push(1.0);
    bp.extend_from_slice(&s2.variables);
    bp.push(0.0);
    Ok(Routes {
        lp1_value: s1.value,
        lp2_value: s2.value,
        lp2_breakpoints: bp,
        closed: dispatch_closed_form(inst),
    })
}

fn cmd_compute(
    p: u32,
    q: u32,
    method: Method,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> ExitCode {
    if let Err(code) = check_tol(tol) {
        return code;
    }
    let inst = match instance_or_exit(p, q) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let routes = match solve_routes(&inst, tol) {
        Ok(r) => r,
        Err(code) => return code,
    };

    let closed_value = routes.closed.as_ref().map(|c| c.value);
    let (method_name, value, breakpoints) = match method {
        Method::Lp1 => ("lp1", routes.lp1_value, routes.lp2_breakpoints.clone()),
        Method::Lp2 => ("lp2", routes.lp2_value, routes.lp2_breakpoints.clone()),
        Method::Closed | Method::All => {
            if method == Method::Closed && routes.closed.is_none() {
                eprintln!("error: no closed form applies to p={p} q={q}");
                return ExitCode::from(EXIT_METHOD_UNAVAILABLE);
            }
            match &routes.closed {
                Some(cf) => (
                    if method == Method::All { "all" } else { "closed" },
                    cf.value,
                    cf.breakpoints
                        .clone()
                        .unwrap_or_else(|| routes.lp2_breakpoints.clone()),
                ),
                None => ("all", routes.lp2_value, routes.lp2_breakpoints.clone()),
            }
        }
    };

    let record = ComputeRecord {
        p,
        q,
        h: inst.h(),
        method: method_name.into(),
        value,
        breakpoints,
        residuals: Residuals {
            lp1_vs_lp2: (routes.lp1_value - routes.lp2_value).abs(),
            lp_vs_closed: closed_value.map(|c| {
                (c - routes.lp1_value).abs().max((c - routes.lp2_value).abs())
            }),
        },
    };
    let content = match format {
        Format::Json => record.to_json() + "\n",
        Format::Csv => record.to_csv(),
    };
    emit(out, &content)
}

fn family_instances(family: Family, max_q: u32) -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    match family {
        Family::TwoOverQ => {
            for q in (5..=max_q).filter(|q| q % 2 == 1) {
                out.extend(make_instance(2, q));
            }
        }
        Family::ThreeOverQ => {
            for q in (7..=max_q).filter(|q| q % 3 != 0) {
                out.extend(make_instance(3, q));
            }
        }
        Family::POver2p1 => {
            let mut p = 1;
            while 2 * p + 1 <= max_q {
                out.extend(make_instance(p, 2 * p + 1));
                p += 1;
            }
        }
        Family::AllSmall => {
            for q in 2..=max_q {
                for p in 1..=q / 2 {
                    out.extend(make_instance(p, q));
                }
            }
        }
    }
    out
}

fn cmd_table(
    family: Family,
    max_q: u32,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> ExitCode {
    if let Err(code) = check_tol(tol) {
        return code;
    }
    if max_q > 1000 {
        eprintln!("error: --max-q must be at most 1000");
        return ExitCode::from(EXIT_INVALID_INPUT);
    }

    let mut rows = Vec::new();
    for inst in family_instances(family, max_q) {
        let routes = match solve_routes(&inst, tol) {
            Ok(r) => r,
            Err(code) => return code,
        };
        let closed = routes.closed.as_ref().map(|c| c.value);
        let h = inst.h();
        let a_best = closed.unwrap_or(routes.lp2_value);
        rows.push((
            inst.p(),
            inst.q(),
            h,
            closed,
            routes.lp1_value,
            routes.lp2_value,
            (routes.lp1_value - routes.lp2_value).abs(),
            closed.map(|c| (c - routes.lp2_value).abs()),
            (a_best - h) / (h * h * h),
        ));
    }

    let content = match format {
        Format::Csv => {
            let mut s = String::from(
                "p,q,h,A_closed,A_lp1,A_lp2,delta_lp1_lp2,delta_lp_closed,excess_over_h3\n",
            );
            for (p, q, h, closed, a1, a2, d12, dc, ratio) in rows {
                let _ = writeln!(
                    s,
                    "{p},{q},{},{},{},{},{},{},{}",
                    fmt_f64(h),
                    fmt_opt(closed),
                    fmt_f64(a1),
                    fmt_f64(a2),
                    fmt_f64(d12),
                    fmt_opt(dc),
                    fmt_f64(ratio),
                );
            }
            s
        }
        Format::Json => {
            let mut s = String::from("[");
            for (i, (p, q, h, closed, a1, a2, d12, dc, ratio)) in rows.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(
                    s,
                    "{{\"p\":{p},\"q\":{q},\"h\":{},\"A_closed\":{},\"A_lp1\":{},\"A_lp2\":{},\"delta_lp1_lp2\":{},\"delta_lp_closed\":{},\"excess_over_h3\":{}}}",
                    fmt_f64(*h),
                    closed.map(fmt_f64).unwrap_or_else(|| "null".into()),
                    fmt_f64(*a1),
                    fmt_f64(*a2),
                    fmt_f64(*d12),
                    dc.map(fmt_f64).unwrap_or_else(|| "null".into()),
                    fmt_f64(*ratio),
                );
            }
            s.push_str("]\n");
            s
        }
    };
    emit(out, &content)
}

fn cmd_verify(max_q: u32, tol: f64, out: Option<PathBuf>) -> ExitCode {
    if let Err(code) = check_tol(tol) {
        return code;
    }
    if max_q > 40 {
        eprintln!("error: --max-q must be at most 40 for verify");
        return ExitCode::from(EXIT_INVALID_INPUT);
    }
    let outcome = verify::run_verify(max_q, tol);
    let code = if outcome.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    };
    let emit_code = emit(out, &outcome.report);
    if emit_code != ExitCode::SUCCESS {
        return emit_code;
    }
    code
}

/// Optimal breakpoints: closed form when catalogued, LP2 otherwise.
fn optimal_function(inst: &ProblemInstance, tol: f64) -> Result<ExtremalFunction, ExitCode> {
    if let Some(cf) = dispatch_closed_form(inst) {
        if let Some(bp) = cf.breakpoints {
            return Ok(from_breakpoints(inst.q(), bp));
        }
    }
    let routes = solve_routes(inst, tol)?;
    Ok(from_breakpoints(inst.q(), routes.lp2_breakpoints))
}

fn cmd_emit_function(
    p: u32,
    q: u32,
    samples: u32,
    tol: f64,
    out: Option<PathBuf>,
) -> ExitCode {
    if let Err(code) = check_tol(tol) {
        return code;
    }
    if samples < 2 {
        eprintln!("error: --samples must be at least 2");
        return ExitCode::from(EXIT_INVALID_INPUT);
    }
    let inst = match instance_or_exit(p, q) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let f = match optimal_function(&inst, tol) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let mut content = String::from("x,phi\n");
    for i in 0..samples {
        let x = -0.5 + i as f64 / (samples - 1) as f64;
        let _ = writeln!(content, "{},{}", fmt_f64(x), fmt_f64(phi_eval(&f, x)));
    }
    emit(out, &content)
}

fn cmd_fourier(
    p: u32,
    q: u32,
    terms: Option<u32>,
    tol: f64,
    out: Option<PathBuf>,
) -> ExitCode {
    if let Err(code) = check_tol(tol) {
        return code;
    }
    let inst = match instance_or_exit(p, q) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let terms = terms.unwrap_or(10 * q);
    let f = match optimal_function(&inst, tol) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let mut content = String::from("n,alpha\n");
    for n in 0..=terms {
        let _ = writeln!(content, "{n},{}", fmt_f64(fourier_alpha(&f, n)));
    }
    let tail = 2.0 * q as f64 / (std::f64::consts::PI.powi(2) * terms.max(1) as f64);
    let _ = writeln!(content, "# tail bound: sum of omitted alpha_n <= {}", fmt_f64(tail));
    emit(out, &content)
}
