use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::Real;

/// Ascending series for `I_n(z)`, returned as `sum · exp(log_scale)` so that
/// neither factor overflows. Terms are all positive, so the sum carries no
/// cancellation.
fn series_parts<T: Real>(n: usize, z: T) -> Result<(T, T)> {
    let half = z / T::lit(2.0);
    let nf = T::of(n);
    let log_t0 = nf * half.ln() - ln_gamma(nf + T::one())?;
    let (mut log_scale, mut term) = if log_t0.abs() < T::lit(600.0) {
        (
            T::zero(),
            (1..=n).fold(T::one(), |acc, k| acc * half / T::of(k)),
        )
    } else {
        (log_t0, T::one())
    };
    let rescale = T::lit(1e30);
    let q = half * half;
    let mut sum = term;
    for k in 1..=200_000usize {
        let kf = T::of(k);
        let r = q / (kf * (kf + nf));
        term = term * r;
        sum = sum + term;
        if sum > rescale {
            sum = sum / rescale;
            term = term / rescale;
            log_scale = log_scale + rescale.ln();
        }
        if r < T::one() && term * r / (T::one() - r) <= T::epsilon() * T::lit(0.25) * sum {
            return Ok((log_scale, sum));
        }
    }
    Err(Error::no_convergence(
        "bessel_i",
        format!("n = {n}, z = {z}"),
    ))
}

fn combine<T: Real>(log_scale: T, sum: T) -> T {
    let f = log_scale.exp();
    if f.is_normal() {
        f * sum
    } else {
        (log_scale + sum.ln()).exp()
    }
}

/// Exponentially scaled `e^{-z} I_n(z)`.
///
/// Negative orders use `I_{-n} = I_n`.
pub fn bessel_i_scaled<T: Real>(n: i64, z: T) -> Result<T> {
    if !(z >= T::zero()) {
        return Err(Error::domain("bessel_i", format!("z = {z} < 0")));
    }
    let n = n.unsigned_abs() as usize;
    if z == T::zero() {
        return Ok(if n == 0 { T::one() } else { T::zero() });
    }
    let (log_scale, sum) = series_parts(n, z)?;
    Ok(combine(log_scale - z, sum))
}

/// Modified Bessel function of the first kind `I_n(z)` for integer order and
/// real `z ≥ 0`, from the ascending power series.
pub fn bessel_i<T: Real>(n: i64, z: T) -> Result<T> {
    if !(z >= T::zero()) {
        return Err(Error::domain("bessel_i", format!("z = {z} < 0")));
    }
    let order = n.unsigned_abs() as usize;
    if z == T::zero() {
        return Ok(if order == 0 { T::one() } else { T::zero() });
    }
    let (log_scale, sum) = series_parts(order, z)?;
    if log_scale + sum.ln() >= T::max_value().ln() {
        return Err(Error::overflow(
            "bessel_i",
            format!("I_{n}({z}) exceeds the floating-point range"),
        ));
    }
    Ok(combine(log_scale, sum))
}

/// Half-integer Macdonald function `K_{ν}(z)` for `2ν ∈ {1, 3, 5}`, in closed form.
pub fn bessel_k_half<T: Real>(two_nu: u32, z: T) -> Result<T> {
    if !(z > T::zero()) {
        return Err(Error::domain("bessel_k_half", format!("z = {z} ≤ 0")));
    }
    let base = (T::PI() / (T::lit(2.0) * z)).sqrt() * (-z).exp();
    let inv = z.recip();
    let poly = match two_nu {
        1 => T::one(),
        3 => T::one() + inv,
        5 => T::one() + T::lit(3.0) * inv + T::lit(3.0) * inv * inv,
        _ => {
            return Err(Error::domain(
                "bessel_k_half",
                format!("unsupported order {two_nu}/2"),
            ))
        }
    };
    Ok(base * poly)
}
