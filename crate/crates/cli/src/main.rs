mod args;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use heat_trace::circle::{
    cycle_free_energy_bessel, cycle_logdet_exact, s1_free_energy, s1_free_energy_series,
    s1_pauli_villars, CycleSpec,
};
use heat_trace::deform::{
    deformed_f3, deformed_f5, deformed_f_general, deformed_free_energy, regularized_series_route,
};
use heat_trace::qdeform::q_free_energy_order2;
use heat_trace::sphere::{
    f3_conformal_series, f_conformal_reference, f_integral_rep, f_pc_zeta, F3Mass, SphereSpec,
};
use heat_trace::verify::{run_suite, VerifyReport};
use heat_trace::{Coupling, EvalResult, SeriesPolicy};
use serde::Serialize;

use args::{
    Cli, Command, ComputeArgs, Format, MethodArg, ReportFormat, SweepArgs, Target, VerifyArgs,
};

const DEFAULT_TOL: f64 = 1e-12;
const TOL_ENV: &str = "HEAT_TRACE_TOL";

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<heat_trace::Error> for Failure {
    fn from(e: heat_trace::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(a) => run_compute(&a),
        Command::Sweep(a) => run_sweep(&a),
        Command::Verify(a) => run_verify(&a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{TOL_ENV}='{s}' is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return usage(format!("tolerance {tol} must be positive and finite"));
    }
    Ok(tol)
}

fn emit(path: &Option<std::path::PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Compute(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Compute(e.to_string()))
        }
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str, target: Target) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {target:?}").to_lowercase()))
}

fn check_d(d: u32) -> Result<u32, Failure> {
    if d < 3 || d % 2 == 0 || d > heat_trace::sphere::MAX_DIM {
        return usage(format!(
            "--d {d}: expected an odd dimension in 3..={}",
            heat_trace::sphere::MAX_DIM
        ));
    }
    Ok(d)
}

fn check_ma(ma: f64, flag: &str) -> Result<f64, Failure> {
    if !(ma >= 0.0 && ma.is_finite()) {
        return usage(format!("--{flag} {ma}: expected a finite value ≥ 0"));
    }
    Ok(ma)
}

fn unsupported<T>(method: MethodArg, what: &str) -> Result<T, Failure> {
    usage(format!("method {method:?} is not available for {what}").to_lowercase())
}

#[derive(Serialize)]
struct ComputeRecord {
    target: &'static str,
    d: Option<u32>,
    #[serde(rename = "N")]
    n: Option<u32>,
    coupling: Option<Coupling>,
    ma: Option<f64>,
    value: f64,
    method: String,
    terms_or_nodes: usize,
    err_estimate: f64,
}

fn compute_value(a: &ComputeArgs, tol: f64) -> Result<(EvalResult<f64>, ComputeRecord), Failure> {
    let policy = SeriesPolicy::with_tol(tol);
    let coupling: Coupling = a.coupling.into();
    let m = a.method;
    let mut rec = ComputeRecord {
        target: "",
        d: None,
        n: None,
        coupling: None,
        ma: None,
        value: 0.0,
        method: String::new(),
        terms_or_nodes: 0,
        err_estimate: 0.0,
    };
    let r = match a.target {
        Target::S1 => {
            rec.target = "s1";
            let ma = check_ma(require(a.ma, "ma", a.target)?, "ma")?;
            rec.ma = Some(ma);
            if let Some(big) = a.big_ma {
                check_ma(big, "Ma")?;
                if !matches!(m, MethodArg::Auto) {
                    return unsupported(m, "s1 with --Ma");
                }
                EvalResult::closed_form(s1_pauli_villars(ma, big)?)
            } else {
                match m {
                    MethodArg::Auto => EvalResult::closed_form(s1_free_energy(ma)?),
                    MethodArg::Series => s1_free_energy_series(ma, &policy)?,
                    _ => return unsupported(m, "s1"),
                }
            }
        }
        Target::Cycle => {
            rec.target = "cycle";
            let n = require(a.n, "N", a.target)?;
            let ma = check_ma(require(a.ma, "ma", a.target)?, "ma")?;
            if n < 3 {
                return usage(format!("--N {n}: a cycle graph needs N ≥ 3"));
            }
            rec.n = Some(n);
            rec.ma = Some(ma);
            let spec = CycleSpec::new(n as usize, ma)?;
            match m {
                MethodArg::Auto | MethodArg::Bessel => cycle_free_energy_bessel(&spec, &policy)?,
                MethodArg::Logdet => EvalResult::closed_form(cycle_logdet_exact(&spec)?),
                _ => return unsupported(m, "cycle"),
            }
        }
        Target::Sphere => {
            rec.target = "sphere";
            let d = check_d(require(a.d, "d", a.target)?)?;
            let ma = check_ma(a.ma.unwrap_or(0.0), "ma")?;
            rec.d = Some(d);
            rec.coupling = Some(coupling);
            rec.ma = Some(ma);
            let spec = SphereSpec::new(d, coupling, ma)?;
            let massless = ma == 0.0;
            match (m, massless) {
                (MethodArg::Auto, true) => match coupling {
                    Coupling::Conformal if d <= 11 => {
                        EvalResult::closed_form(f_conformal_reference(d)?)
                    }
                    Coupling::Conformal => f_integral_rep(d, coupling, tol)?,
                    Coupling::PseudoConformal => EvalResult::closed_form(f_pc_zeta(d)?),
                },
                (MethodArg::Zeta, true) if coupling == Coupling::PseudoConformal => {
                    EvalResult::closed_form(f_pc_zeta(d)?)
                }
                (MethodArg::Integral, true) => f_integral_rep(d, coupling, tol)?,
                (MethodArg::Auto | MethodArg::Series, _) if d == 3 => {
                    let y = F3Mass::try_from(spec.mass_param()).map_err(|_| {
                        Failure::Usage(format!(
                            "--ma {ma}: conformal S³ series needs ma = 0 or ma ≥ 1/2"
                        ))
                    })?;
                    f3_conformal_series(y, &policy)?
                }
                (MethodArg::Auto, false) => {
                    return usage("massive spheres are available for d = 3 only")
                }
                _ => return unsupported(m, &format!("sphere (d = {d}, {coupling}, ma = {ma})")),
            }
        }
        Target::Deformed => {
            rec.target = "deformed";
            let d = check_d(require(a.d, "d", a.target)?)?;
            let n = require(a.n, "N", a.target)?;
            if n < 2 * d {
                return usage(format!(
                    "--N {n}: the deformed sphere needs N ≥ 2d = {}",
                    2 * d
                ));
            }
            rec.d = Some(d);
            rec.n = Some(n);
            rec.coupling = Some(coupling);
            match (m, d) {
                (MethodArg::Auto, _) => deformed_free_energy(d, n, coupling, tol)?,
                (MethodArg::Series, 3) => deformed_f3(n, coupling, &policy)?,
                (MethodArg::Series, 5) => deformed_f5(n, coupling, &policy)?,
                (MethodArg::Integral, _) => deformed_f_general(d, n, coupling, tol)?,
                (MethodArg::Bessel, 3) => regularized_series_route(n, coupling, &policy)?,
                _ => return unsupported(m, &format!("deformed d = {d}")),
            }
        }
        Target::Qdeformed => {
            rec.target = "qdeformed";
            let d = a.d.unwrap_or(3);
            if d != 3 {
                return usage(format!(
                    "--d {d}: the q-deformed free energy is available for d = 3 only"
                ));
            }
            let n = require(a.n, "N", a.target)?;
            if n < 8 {
                return usage(format!("--N {n}: expected N ≥ 8"));
            }
            rec.d = Some(d);
            rec.n = Some(n);
            rec.coupling = Some(coupling);
            match m {
                MethodArg::Auto | MethodArg::Series => q_free_energy_order2(d, n, coupling)?,
                _ => return unsupported(m, "qdeformed"),
            }
        }
    };
    rec.value = r.value;
    rec.method = r.method.to_string();
    rec.terms_or_nodes = r.terms_or_nodes;
    rec.err_estimate = r.err_estimate;
    Ok((r, rec))
}

/// Shortest round-trip decimal, spelled exactly as in the JSON output.
fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serializes")
}

fn run_compute(a: &ComputeArgs) -> Result<bool, Failure> {
    let tol = resolve_tol(a.tol)?;
    let (r, rec) = compute_value(a, tol)?;
    if !r.value.is_finite() {
        return Err(Failure::Compute(format!("non-finite result {}", r.value)));
    }
    let text = match a.format {
        Format::Text => format!(
            "{}\nmethod: {}\nterms_or_nodes: {}\nerr_estimate: {}\n",
            num(r.value),
            r.method,
            r.terms_or_nodes,
            num(r.err_estimate)
        ),
        Format::Json => serde_json::to_string_pretty(&rec).expect("serializable") + "\n",
        Format::Csv => format!(
            "value,method,terms_or_nodes,err_estimate\n{},{},{},{}\n",
            num(r.value),
            r.method,
            r.terms_or_nodes,
            num(r.err_estimate)
        ),
    };
    emit(&a.output, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "F_deformed")]
    f_deformed: f64,
    #[serde(rename = "F_limit")]
    f_limit: f64,
    rel_error: f64,
}

fn sweep_point(
    d: u32,
    n: u32,
    coupling: Coupling,
    method: MethodArg,
    tol: f64,
) -> Result<SweepRow, Failure> {
    let policy = SeriesPolicy::with_tol(tol);
    let f = match (method, d) {
        (MethodArg::Auto, _) => deformed_free_energy(d, n, coupling, tol)?,
        (MethodArg::Series, 3) => deformed_f3(n, coupling, &policy)?,
        (MethodArg::Series, 5) => deformed_f5(n, coupling, &policy)?,
        (MethodArg::Integral, _) => deformed_f_general(d, n, coupling, tol)?,
        _ => return unsupported(method, &format!("sweep at d = {d}")),
    }
    .value;
    let limit = heat_trace::sphere::f_reference::<f64>(d, coupling)?;
    Ok(SweepRow {
        n,
        f_deformed: f,
        f_limit: limit,
        rel_error: ((f - limit) / limit).abs(),
    })
}

fn run_sweep(a: &SweepArgs) -> Result<bool, Failure> {
    use rayon::prelude::*;

    let d = check_d(a.d)?;
    let tol = resolve_tol(a.tol)?;
    if a.n.start < 2 * d {
        return usage(format!(
            "--N start {} below the minimum 2d = {}",
            a.n.start,
            2 * d
        ));
    }
    if a.format == Format::Text {
        return usage("sweep writes csv or json");
    }
    let coupling: Coupling = a.coupling.into();
    let ns = a.n.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads)
        .build()
        .map_err(|e| Failure::Compute(e.to_string()))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        ns.par_iter()
            .map(|&n| sweep_point(d, n, coupling, a.method, tol))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
        _ => {
            let mut s = String::from("N,F_deformed,F_limit,rel_error\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{}",
                    r.n,
                    num(r.f_deformed),
                    num(r.f_limit),
                    num(r.rel_error)
                )
                .expect("string write");
            }
            s
        }
    };
    emit(&a.output, &text)?;
    Ok(true)
}

fn report_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        writeln!(
            s,
            "{tag}  {}  got={} expected={} tol={}",
            c.name, c.got, c.expected, c.tol
        )
        .expect("string write");
    }
    writeln!(
        s,
        "suite {}: {}/{} checks passed",
        r.suite,
        r.passed(),
        r.checks.len()
    )
    .expect("string write");
    s
}

fn run_verify(a: &VerifyArgs) -> Result<bool, Failure> {
    let report = run_suite(a.suite);
    let text = match a.format {
        ReportFormat::Text => {
            eprintln!("wall time: {} ms", report.wall_time_ms);
            report_text(&report)
        }
        ReportFormat::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
    };
    emit(&a.output, &text)?;
    Ok(report.all_pass)
}
