//! Reproduction checks grouped into suites, with a serializable report.
//!
//! Every check compares a computed value against an expected one under an
//! absolute tolerance: `pass ⇔ |got − expected| ≤ tol`. Range checks use the
//! midpoint as `expected` and the half-width as `tol`; "count" checks expect
//! zero violations.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::circle::{cycle_free_energy_bessel, cycle_logdet_exact, s1_free_energy, CycleSpec};
use crate::deform::{
    bessel_diff_closed, bessel_sum, cos_exp_sum, deformed_degeneracy, deformed_f3, deformed_f5,
    deformed_f_general, expansion_coefficients, one_percent_threshold, regularized_series_route,
    relative_error, DeformSpec,
};
use crate::qdeform::{q_binomial_difference, q_expansion_coefficients, QNumberCtx};
use crate::specfun::{
    alt_sum_closed, bessel_i, bessel_i_scaled, dirichlet_eta, integrate_semiinf, riemann_zeta,
    SeriesPolicy,
};
use crate::sphere::{
    degeneracy_binomial, degeneracy_odd, degeneracy_product, f_conformal_reference,
    f_imaginary_axis, f_integral_rep, f_pc_zeta, f_reference,
};
use crate::{Coupling, Result};

const COUPLINGS: [Coupling; 2] = [Coupling::Conformal, Coupling::PseudoConformal];
const DIMS: [u32; 5] = [3, 5, 7, 9, 11];

/// Reference free energies to three significant figures: conformal and pseudo-conformal columns for d = 3..=11.
pub const TABLE1_CONFORMAL: [f64; 5] = [0.0638, -5.74e-3, 7.97e-4, -1.31e-4, 2.37e-5];
pub const TABLE1_PC: [f64; 5] = [0.0304, -3.20e-3, 4.66e-4, -7.83e-5, 1.43e-5];

/// Reference `π²/N²` coefficients of the deformed free energies, keyed by (d, coupling).
pub const EXPANSION_SLOPES: [(u32, Coupling, f64); 4] = [
    (3, Coupling::Conformal, 0.0230),
    (3, Coupling::PseudoConformal, 0.0128),
    (5, Coupling::Conformal, -0.0159),
    (5, Coupling::PseudoConformal, -0.00931),
];

/// Reference `π²/N²` coefficients of the q-variant on S³.
pub const Q_SLOPES: [(Coupling, f64); 2] = [
    (Coupling::Conformal, 0.0232),
    (Coupling::PseudoConformal, 0.0320),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub got: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: f64, got: f64, tol: f64) -> Self {
        let pass = (got - expected).abs() <= tol;
        Check {
            name: name.into(),
            expected,
            got,
            tol,
            pass,
        }
    }

    /// Relative tolerance `rel · |expected|`.
    pub fn rel(name: impl Into<String>, expected: f64, got: f64, rel: f64) -> Self {
        Self::new(name, expected, got, rel * expected.abs())
    }

    /// `got ∈ [lo, hi]`.
    pub fn range(name: impl Into<String>, lo: f64, hi: f64, got: f64) -> Self {
        Self::new(name, (lo + hi) / 2.0, got, (hi - lo) / 2.0)
    }

    /// A printed decimal `p` stands for its rounding interval `p ± ½ulp`;
    /// `got` must lie within `rel · |p|` of that interval.
    pub fn printed(
        name: impl Into<String>,
        printed: f64,
        sig_figs: i32,
        got: f64,
        rel: f64,
    ) -> Self {
        let exponent = printed.abs().log10().floor() as i32;
        let half_ulp = 0.5 * 10f64.powi(exponent - sig_figs + 1);
        Self::new(name, printed, got, half_ulp + rel * printed.abs())
    }

    fn from_result(name: impl Into<String>, expected: f64, got: Result<f64>, tol: f64) -> Self {
        match got {
            Ok(g) => Self::new(name, expected, g, tol),
            Err(_) => Check {
                name: name.into(),
                expected,
                got: f64::NAN,
                tol,
                pass: false,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Table1,
    Figures,
    Identities,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Table1 => "table1",
            Suite::Figures => "figures",
            Suite::Identities => "identities",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "table1" => Ok(Suite::Table1),
            "figures" => Ok(Suite::Figures),
            "identities" => Ok(Suite::Identities),
            "all" => Ok(Suite::All),
            _ => Err(format!(
                "unknown suite '{s}' (expected table1, figures, identities or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub all_pass: bool,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }
}

pub fn run_suite(suite: Suite) -> VerifyReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Table1 => table1_checks(),
        Suite::Figures => figure_checks(),
        Suite::Identities => identity_checks(),
        Suite::All => {
            let mut all = table1_checks();
            all.extend(figure_checks());
            all.extend(identity_checks());
            all
        }
    };
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        suite: suite.to_string(),
        checks,
        all_pass,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

/// Closed forms against the three-figure reference decimals.
pub fn table1_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (i, d) in DIMS.into_iter().enumerate() {
        for (coupling, printed) in [
            (Coupling::Conformal, TABLE1_CONFORMAL[i]),
            (Coupling::PseudoConformal, TABLE1_PC[i]),
        ] {
            let name = format!("table1/{coupling}/d={d}");
            out.push(match f_reference::<f64>(d, coupling) {
                Ok(g) => Check::printed(name, printed, 3, g, 5e-4),
                Err(_) => {
                    Check::from_result(name, printed, Err(crate::Error::domain("table1", "")), 0.0)
                }
            });
        }
    }
    out
}

/// Independent integral routes for the reference values, 1e-7 absolute.
pub fn table1_route_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for d in DIMS {
        let conf = f_conformal_reference::<f64>(d).unwrap_or(f64::NAN);
        let pc = f_pc_zeta::<f64>(d).unwrap_or(f64::NAN);
        for (coupling, reference) in [(Coupling::Conformal, conf), (Coupling::PseudoConformal, pc)]
        {
            out.push(Check::from_result(
                format!("routes/real_segment/{coupling}/d={d}"),
                reference,
                f_integral_rep(d, coupling, 1e-12).map(|r| r.value),
                1e-7,
            ));
            out.push(Check::from_result(
                format!("routes/imaginary_axis/{coupling}/d={d}"),
                reference,
                f_imaginary_axis(d, coupling, 1e-12).map(|r| r.value),
                1e-7,
            ));
        }
    }
    out
}

/// Convergence thresholds (one percent at N ≈ 20 for d = 3 and N ≈ 40 for d = 5).
pub fn threshold_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (d, lo, hi) in [(3u32, 15.0, 25.0), (5, 32.0, 48.0)] {
        for coupling in COUPLINGS {
            let got = one_percent_threshold(d, coupling)
                .map(f64::from)
                .unwrap_or(f64::NAN);
            out.push(Check::range(
                format!("threshold/{coupling}/d={d}"),
                lo,
                hi,
                got,
            ));
        }
    }
    out
}

/// Number of N in `2d..=hi` at which the relative error fails to decrease.
pub fn monotone_violations(d: u32, coupling: Coupling, hi: u32) -> Result<usize> {
    let mut last = f64::INFINITY;
    let mut bad = 0;
    for n in 2 * d..=hi {
        let e = relative_error::<f64>(d, n, coupling, 1e-12)?;
        if !(e < last) {
            bad += 1;
        }
        last = e;
    }
    Ok(bad)
}

pub fn monotone_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for d in [3u32, 5] {
        for coupling in COUPLINGS {
            out.push(Check::from_result(
                format!("monotone_decay/{coupling}/d={d}"),
                0.0,
                monotone_violations(d, coupling, 200).map(|v| v as f64),
                0.0,
            ));
        }
    }
    out
}

/// Fitted `π²/N²` coefficients over N ∈ [50, 400] and the q-variant brackets.
pub fn expansion_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (d, coupling, slope) in EXPANSION_SLOPES {
        let fit = expansion_coefficients::<f64>(d, coupling, 50, 400);
        out.push(Check::from_result(
            format!("expansion/{coupling}/d={d}/pi2_over_n2"),
            slope,
            fit.as_ref().map(|c| c[1]).map_err(Clone::clone),
            5e-4,
        ));
        let idx = DIMS.iter().position(|&x| x == d).unwrap_or(0);
        let lead = match coupling {
            Coupling::Conformal => TABLE1_CONFORMAL[idx],
            Coupling::PseudoConformal => TABLE1_PC[idx],
        };
        out.push(Check::from_result(
            format!("expansion/{coupling}/d={d}/leading"),
            lead,
            fit.map(|c| c[0]),
            5e-4,
        ));
    }
    for (coupling, slope) in Q_SLOPES {
        out.push(Check::from_result(
            format!("expansion/q/{coupling}/d=3/pi2_over_n2"),
            slope,
            q_expansion_coefficients::<f64>(coupling).map(|c| c[1]),
            5e-4,
        ));
    }
    out
}

/// Integral-route deformed free energies at N = 10⁴ against the continuum.
pub fn large_n_checks(tol: f64) -> Vec<Check> {
    let mut out = Vec::new();
    for d in DIMS {
        for coupling in COUPLINGS {
            let reference = f_reference::<f64>(d, coupling).unwrap_or(f64::NAN);
            out.push(Check::from_result(
                format!("large_n/{coupling}/d={d}/N=10000"),
                reference,
                deformed_f_general(d, 10_000, coupling, 1e-13).map(|r| r.value),
                tol,
            ));
        }
    }
    out
}

pub fn figure_checks() -> Vec<Check> {
    let mut out = threshold_checks();
    out.extend(monotone_checks());
    out.push(Check::range(
        "sweep/conformal/d=3/N=20/rel_error",
        0.005,
        0.02,
        relative_error::<f64>(3, 20, Coupling::Conformal, 1e-12).unwrap_or(f64::NAN),
    ));
    out.extend(expansion_checks());
    out.extend(large_n_checks(1e-6));
    out
}

/// `e^{z cos θ} = I₀(z) + 2 Σ_{l≥1} cos(lθ) I_l(z)`.
pub fn bessel_expansion_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for theta in [
        0.0,
        std::f64::consts::FRAC_PI_3,
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::PI,
    ] {
        for z in [0.5f64, 2.0, 5.0] {
            let got = (|| -> Result<f64> {
                let mut s = bessel_i(0, z)?;
                let mut l = 1;
                loop {
                    let i = bessel_i(l, z)?;
                    s += 2.0 * (l as f64 * theta).cos() * i;
                    // I_l(z) decays faster than (z/2)^l / l! beyond l > z
                    if l as f64 > z && 2.0 * i * z / (l as f64 + 1.0 - z) < 1e-16 {
                        return Ok(s);
                    }
                    l += 1;
                }
            })();
            out.push(Check::from_result(
                format!("identity/bessel_expansion/theta={theta:.4}/z={z}"),
                (z * theta.cos()).exp(),
                got,
                1e-10,
            ));
        }
    }
    out
}

/// `Σ e^{−l²t} = √(π/t) Σ e^{−π²l²/t}`, both sides truncated by Gaussian bounds.
pub fn poisson_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for t in [0.1f64, 1.0, 10.0] {
        let theta = |alpha: f64| {
            let cut = (40.0 / alpha).sqrt().ceil() as i64;
            (-cut..=cut)
                .map(|l| (-(l * l) as f64 * alpha).exp())
                .sum::<f64>()
        };
        let pi2 = std::f64::consts::PI.powi(2);
        let lhs = theta(t);
        let rhs = (std::f64::consts::PI / t).sqrt() * theta(pi2 / t);
        out.push(Check::new(
            format!("identity/poisson/t={t}"),
            lhs,
            rhs,
            1e-12,
        ));
    }
    out
}

pub fn eta_zeta_checks() -> Vec<Check> {
    (2..=12)
        .map(|s| {
            let sf = s as f64;
            let ratio = (2f64.powi(s - 1) - 1.0) / 2f64.powi(s - 1);
            let got = dirichlet_eta(sf).and_then(|e| Ok(e - ratio * riemann_zeta(sf)?));
            Check::from_result(format!("identity/eta_zeta/s={s}"), 0.0, got, 1e-12)
        })
        .collect()
}

/// `2a² Σ (−1)^q/(q² − a²)` by averaged partial sums against `1 − πa/sin πa`.
pub fn alt_sum_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for a in [0.05f64, 0.1, 0.3, 0.45] {
        let q_max = 20_000;
        let mut partial = 0.0;
        let mut prev = 0.0;
        for q in 1..=q_max {
            prev = partial;
            let qf = q as f64;
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            partial += sign / (qf * qf - a * a);
        }
        let brute = 2.0 * a * a * 0.5 * (partial + prev);
        out.push(Check::from_result(
            format!("identity/alt_sum/a={a}"),
            brute,
            alt_sum_closed(a),
            1e-9,
        ));
    }
    out
}

pub fn discrete_bessel_checks() -> Vec<Check> {
    let policy = SeriesPolicy::default();
    vec![Check::from_result(
        "identity/discrete_bessel_sum/N=6/t=1",
        cos_exp_sum(6, 1.0),
        bessel_sum(6, 1.0, &policy).map(|r| r.value),
        1e-10,
    )]
}

pub fn bessel_difference_checks() -> Vec<Check> {
    let (nu, x) = (6i64, 0.5f64);
    let integrand = |t: f64| {
        let z = 2.0 * t;
        let i = |k: i64| bessel_i_scaled(k, z).unwrap_or(f64::NAN);
        (i(nu) - 0.5 * (i(nu - 1) + i(nu + 1))) * (z * (1.0 - x.cosh())).exp() / t
    };
    let quad = integrate_semiinf(integrand, 2.0 * (x.cosh() - 1.0), 1e-12).map(|r| r.value);
    vec![Check::from_result(
        "identity/bessel_difference/nu=6/x=0.5",
        bessel_diff_closed(nu as f64, x).unwrap_or(f64::NAN),
        quad,
        1e-8,
    )]
}

/// Largest relative gap between the q-binomial and cosine forms of `ĝ_p`.
pub fn q_identity_gap(d: u32, n: u32) -> Result<f64> {
    let ctx = QNumberCtx::new(n)?;
    let spec = DeformSpec::new(d, n, Coupling::Conformal)?;
    let v = spec.v();
    let pi_n = std::f64::consts::PI / n as f64;
    let mut worst = 0.0f64;
    for p in 0..n - d {
        let alt = q_binomial_difference::<f64>(&ctx, d, p)?;
        let g = ((p + v) as f64 * pi_n).cos() / (v as f64 * pi_n).cos()
            * deformed_degeneracy::<f64>(&spec, p)?;
        worst = worst.max((alt - g).abs() / g.abs().max(1.0));
    }
    Ok(worst)
}

pub fn q_identity_checks() -> Vec<Check> {
    [12u32, 24]
        .into_iter()
        .map(|n| {
            Check::from_result(
                format!("identity/q_binomial/d=3/N={n}"),
                0.0,
                q_identity_gap(3, n),
                1e-10,
            )
        })
        .collect()
}

/// Count of (d, l) with `d ≤ 11`, `l ≤ 50` where the three degeneracy forms differ.
pub fn degeneracy_mismatches() -> usize {
    let mut bad = 0;
    for d in DIMS {
        for l in 0..=50u64 {
            let forms = (
                degeneracy_binomial(d, l),
                degeneracy_product(d, l),
                degeneracy_odd(d, l),
            );
            match forms {
                (Ok(a), Ok(b), Ok(c)) if a == b && b == c => {}
                _ => bad += 1,
            }
        }
    }
    bad
}

/// Largest pairwise gap among the Bessel, log-determinant and continuum
/// free energies of the cycle graph, N ∈ 3..=64, ma ∈ {0.1, 0.5, 1, 5}.
pub fn cycle_exactness_gap() -> Result<f64> {
    let policy = SeriesPolicy::default();
    let mut worst = 0.0f64;
    for n in 3..=64 {
        for ma in [0.1f64, 0.5, 1.0, 5.0] {
            let spec = CycleSpec::new(n, ma)?;
            let a = cycle_free_energy_bessel(&spec, &policy)?.value;
            let b = cycle_logdet_exact(&spec)?;
            let c = s1_free_energy(ma)?;
            worst = worst
                .max((a - b).abs())
                .max((a - c).abs())
                .max((b - c).abs());
        }
    }
    Ok(worst)
}

/// Pairwise deformed free-energy route agreement: three routes for d = 3,
/// two for d = 5.
pub fn route_checks() -> Vec<Check> {
    let policy = SeriesPolicy::default();
    let mut out = Vec::new();
    for n in [8u32, 20, 64] {
        for coupling in COUPLINGS {
            let series = deformed_f3(n, coupling, &policy).map(|r| r.value);
            let integral = deformed_f_general(3, n, coupling, 1e-13).map(|r| r.value);
            let regularized = regularized_series_route(n, coupling, &policy).map(|r| r.value);
            let s = series.as_ref().copied().unwrap_or(f64::NAN);
            out.push(Check::from_result(
                format!("route/{coupling}/d=3/N={n}/series_vs_integral"),
                s,
                integral.clone(),
                1e-9,
            ));
            out.push(Check::from_result(
                format!("route/{coupling}/d=3/N={n}/series_vs_qsum"),
                s,
                regularized.clone(),
                1e-9,
            ));
            out.push(Check::from_result(
                format!("route/{coupling}/d=3/N={n}/integral_vs_qsum"),
                integral.unwrap_or(f64::NAN),
                regularized,
                1e-9,
            ));
        }
    }
    for n in [16u32, 64] {
        for coupling in COUPLINGS {
            out.push(Check::from_result(
                format!("route/{coupling}/d=5/N={n}/series_vs_integral"),
                deformed_f5(n, coupling, &policy)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN),
                deformed_f_general(5, n, coupling, 1e-13).map(|r| r.value),
                1e-9,
            ));
        }
    }
    out
}

pub fn identity_checks() -> Vec<Check> {
    let mut out = bessel_expansion_checks();
    out.extend(poisson_checks());
    out.extend(eta_zeta_checks());
    out.extend(discrete_bessel_checks());
    out.extend(bessel_difference_checks());
    out.extend(alt_sum_checks());
    out.extend(q_identity_checks());
    out.push(Check::new(
        "identity/degeneracy_forms/mismatches",
        0.0,
        degeneracy_mismatches() as f64,
        0.0,
    ));
    out.push(Check::from_result(
        "identity/cycle_graph/max_gap",
        0.0,
        cycle_exactness_gap(),
        1e-10,
    ));
    out.extend(route_checks());
    out.extend(table1_route_checks());
    out
}
