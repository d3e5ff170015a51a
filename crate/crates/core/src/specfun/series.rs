use super::{EvalResult, Method, SeriesPolicy};
use crate::error::{Error, Result};
use crate::Real;

/// Sums `Σ_{k≥0} (-1)^k a_k` with the Cohen–Villegas–Zagier acceleration.
///
/// This is the polynomial (Chebyshev-weighted) form of the Euler transform:
/// for `a_k` given by moments of a positive measure, or finite linear
/// combinations of such sequences, `n` terms leave a remainder of at most
/// `2 a_0 / (3 + √8)^n`. The number of terms is chosen from that bound and
/// the magnitude of the leading terms.
pub fn alternating_sum<T: Real, F>(term: F, policy: &SeriesPolicy<T>) -> Result<EvalResult<T>>
where
    F: Fn(usize) -> T,
{
    let rate = T::lit(3.0) + T::lit(8.0).sqrt();
    let scale = term(0)
        .abs()
        .max(term(1).abs())
        .max(T::min_positive_value());
    let want = ((T::lit(2.0) * scale / policy.abs_tol).ln() / rate.ln()).ceil();
    let n = want.to_usize().unwrap_or(usize::MAX).max(4);

    // (3+√8)^n must stay finite.
    let n_cap = (T::max_value().ln() / rate.ln())
        .to_usize()
        .unwrap_or(0)
        .saturating_sub(2);
    if n > policy.max_terms.min(n_cap) {
        return Err(Error::no_convergence(
            "alternating_sum",
            format!("{n} terms needed for tolerance {}", policy.abs_tol),
        ));
    }

    let nf = T::of(n);
    let dn = rate.powi(n as i32);
    let d = (dn + dn.recip()) / T::lit(2.0);
    let mut b = -T::one();
    let mut c = -d;
    let mut s = T::zero();
    for k in 0..n {
        let kf = T::of(k);
        c = b - c;
        s = s + c * term(k);
        b = b * (kf + nf) * (kf - nf) / ((kf + T::lit(0.5)) * (kf + T::one()));
    }
    let trunc = T::lit(2.0) * scale / dn;
    let rounding = T::epsilon() * scale * T::lit(8.0);
    Ok(EvalResult {
        value: s / d,
        method: Method::Series,
        terms_or_nodes: n,
        err_estimate: trunc + rounding,
    })
}

/// Sums `Σ_{k≥start} term(k)` until the current term and the caller's tail
/// bound both fall below `policy.abs_tol`.
///
/// `tail_bound(k, t_k)` must bound `|Σ_{j>k} t_j|` given the last term, or
/// return `+∞` while no bound is available yet (e.g. before the terms start
/// decreasing).
pub fn sum_with_tail<T: Real, F, B>(
    start: usize,
    term: F,
    tail_bound: B,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>>
where
    F: Fn(usize) -> T,
    B: Fn(usize, T) -> T,
{
    let mut sum = T::zero();
    for (count, k) in (start..).enumerate() {
        if count >= policy.max_terms {
            return Err(Error::no_convergence(
                "sum_with_tail",
                format!(
                    "exceeded {} terms at tolerance {}",
                    policy.max_terms, policy.abs_tol
                ),
            ));
        }
        let t = term(k);
        if !t.is_finite() {
            return Err(Error::overflow(
                "sum_with_tail",
                format!("non-finite term at k = {k}"),
            ));
        }
        sum = sum + t;
        if t.abs() < policy.abs_tol {
            let tail = tail_bound(k, t);
            if tail < policy.abs_tol {
                return Ok(EvalResult {
                    value: sum,
                    method: Method::Series,
                    terms_or_nodes: count + 1,
                    err_estimate: tail,
                });
            }
        }
    }
    unreachable!("unbounded range")
}

/// Tail bound for a series whose terms decrease at least geometrically with
/// ratio `r < 1` from the last retained term on.
pub(crate) fn geometric_tail<T: Real>(last: T, r: T) -> T {
    if r >= T::one() {
        T::infinity()
    } else {
        last.abs() * r / (T::one() - r)
    }
}
