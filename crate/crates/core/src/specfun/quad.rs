use std::sync::OnceLock;

use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::Real;

const GL_ORDER: usize = 20;
const MAX_PANELS: usize = 4000;

/// Gauss–Legendre nodes and weights on [-1, 1] (positive half, node ascending).
fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static TABLE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = Vec::with_capacity(n / 2);
        let mut weights = Vec::with_capacity(n / 2);
        for i in 0..n / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        (nodes, weights)
    })
}

fn gl_panel<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> T {
    let (nodes, weights) = gauss_legendre();
    let mid = (a + b) / T::lit(2.0);
    let half = (b - a) / T::lit(2.0);
    let mut s = T::zero();
    for (&x, &w) in nodes.iter().zip(weights) {
        let dx = half * T::lit(x);
        s = s + T::lit(w) * (f(mid - dx) + f(mid + dx));
    }
    s * half
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn eval_panel<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Panel<T> {
    let m = (a + b) / T::lit(2.0);
    let coarse = gl_panel(f, a, b);
    let fine = gl_panel(f, a, m) + gl_panel(f, m, b);
    Panel {
        a,
        b,
        value: fine,
        err: (fine - coarse).abs(),
    }
}

/// Adaptive Gauss–Legendre quadrature of `f` over `[a, b]`.
///
/// Each panel is integrated with a 20-point rule on the whole panel and on
/// its two halves; the difference is the panel's error estimate. The panel
/// with the largest estimate is bisected until the summed estimate drops
/// below `tol` (or a floor of a few ulps of the integral's magnitude).
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<EvalResult<T>> {
    if !(b > a) || !(tol > T::zero()) {
        return Err(Error::domain(
            "integrate",
            format!("bad interval [{a}, {b}] or tol {tol}"),
        ));
    }
    let evals_per_panel = 3 * GL_ORDER;
    let n0 = 4;
    let width = (b - a) / T::of(n0);
    let mut panels: Vec<Panel<T>> = (0..n0)
        .map(|i| eval_panel(&f, a + width * T::of(i), a + width * T::of(i + 1)))
        .collect();
    let mut evals = n0 * evals_per_panel;
    loop {
        let total: T = panels.iter().map(|p| p.value).sum();
        let abs_total: T = panels.iter().map(|p| p.value.abs()).sum();
        let err: T = panels.iter().map(|p| p.err).sum();
        if !total.is_finite() {
            return Err(Error::no_convergence(
                "integrate",
                "non-finite integrand values",
            ));
        }
        let floor = T::lit(64.0) * T::epsilon() * abs_total;
        if err <= tol.max(floor) {
            return Ok(EvalResult {
                value: total,
                method: Method::Quadrature,
                terms_or_nodes: evals,
                err_estimate: err,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::no_convergence(
                "integrate",
                format!(
                    "error estimate {err} above tolerance {tol} after {} panels",
                    panels.len()
                ),
            ));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| {
                x.1.err
                    .partial_cmp(&y.1.err)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i)
            .expect("non-empty");
        let p = panels.swap_remove(worst);
        let m = (p.a + p.b) / T::lit(2.0);
        panels.push(eval_panel(&f, p.a, m));
        panels.push(eval_panel(&f, m, p.b));
        evals += 2 * evals_per_panel;
    }
}

/// Integrates `f` over `(0, ∞)` for integrands bounded by `C e^{-c τ}`.
///
/// `decay_rate` is the rate `c`. The cut-off `T` doubles until the tail
/// estimate `|f(T)|/c` (checked at `T` and `1.5 T`) is below a quarter of the
/// tolerance; `[0, T]` is then integrated adaptively. The returned error
/// estimate is the quadrature estimate plus the tail estimate. The nodes never
/// touch `τ = 0`, so removable singularities there are harmless.
pub fn integrate_semiinf<T: Real, F: Fn(T) -> T>(
    f: F,
    decay_rate: T,
    tol: T,
) -> Result<EvalResult<T>> {
    if !(decay_rate > T::zero()) || !(tol > T::zero()) {
        return Err(Error::domain(
            "integrate_semiinf",
            format!("decay rate {decay_rate}, tol {tol}"),
        ));
    }
    let quarter = tol / T::lit(4.0);
    let mut cut = (T::lit(4.0) / decay_rate).max(T::one());
    let mut tail = T::infinity();
    for _ in 0..64 {
        let ft = f(cut).abs().max(f(cut * T::lit(1.5)).abs());
        tail = ft / decay_rate;
        if tail < quarter {
            break;
        }
        cut = cut * T::lit(2.0);
    }
    if !(tail < quarter) {
        return Err(Error::no_convergence(
            "integrate_semiinf",
            "integrand tail does not decay",
        ));
    }
    let body = integrate(&f, T::zero(), cut, tol - tail)?;
    Ok(EvalResult {
        err_estimate: body.err_estimate + tail,
        terms_or_nodes: body.terms_or_nodes + 2,
        ..body
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{dirichlet_eta, riemann_zeta};

    #[test]
    fn nodes_are_a_valid_rule() {
        let (nodes, weights) = gauss_legendre();
        let wsum: f64 = weights.iter().sum::<f64>() * 2.0;
        assert!((wsum - 2.0).abs() < 1e-14);
        // exact for x^38
        let m: f64 = nodes
            .iter()
            .zip(weights)
            .map(|(x, w)| 2.0 * w * x.powi(38))
            .sum();
        assert!((m - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn finite_interval() {
        let r = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-11).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11);
        assert!(integrate(|x: f64| x, 1.0, 0.0, 1e-8).is_err());
    }

    #[test]
    fn semi_infinite_examples() {
        let r = integrate_semiinf(|t: f64| (-t).exp(), 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        assert!(r.err_estimate <= 1e-13);

        let r = integrate_semiinf(|t: f64| t / t.exp_m1(), 1.0, 1e-13).unwrap();
        assert!((r.value - riemann_zeta(2.0).unwrap()).abs() < 1e-12);

        let r = integrate_semiinf(|t: f64| 1.0 / (t.exp() + 1.0), 1.0, 1e-13).unwrap();
        assert!((r.value - dirichlet_eta(1.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn non_decaying_integrand_is_rejected() {
        assert!(integrate_semiinf(|_t: f64| 1.0, 1.0, 1e-8).is_err());
    }
}
