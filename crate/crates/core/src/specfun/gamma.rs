use crate::error::{Error, Result};
use crate::Real;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(z: T) -> T {
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::of(i));
    }
    acc
}

/// Γ(x) for real `x > 0`; relative error below `1e-13` on `(0, 40]`.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("gamma_real", format!("x = {x} ≤ 0")));
    }
    Ok(gamma_pos(x))
}

fn gamma_pos<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        return T::PI() / ((T::PI() * x).sin() * gamma_pos(T::one() - x));
    }
    // small integers exactly
    if x <= T::lit(20.0) && x == x.floor() {
        let n = x.to_usize().unwrap_or(1);
        return (1..n).fold(T::one(), |acc, k| acc * T::of(k));
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    T::TAU().sqrt() * t.powf(z + half) * (-t).exp() * lanczos_sum(z)
}

/// ln Γ(x) for real `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("ln_gamma", format!("x = {x} ≤ 0")));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        return (T::PI() / (T::PI() * x).sin()).ln() - ln_gamma_pos(T::one() - x);
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    half * T::TAU().ln() + (z + half) * t.ln() - t + lanczos_sum(z).ln()
}

/// Digamma ψ(x) for `x > 0`.
///
/// Shifts the argument above 10 with `ψ(x) = ψ(x+1) - 1/x`, then uses the
/// asymptotic expansion through `x^{-10}`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("digamma", format!("x = {x} ≤ 0")));
    }
    let mut x = x;
    let mut acc = T::zero();
    while x < T::lit(10.0) {
        acc = acc - x.recip();
        x = x + T::one();
    }
    let inv2 = (x * x).recip();
    // B_{2k} / (2k)
    let series = inv2
        * (T::lit(1.0 / 12.0)
            - inv2
                * (T::lit(1.0 / 120.0)
                    - inv2
                        * (T::lit(1.0 / 252.0)
                            - inv2 * (T::lit(1.0 / 240.0) - inv2 * T::lit(1.0 / 132.0)))));
    Ok(acc + x.ln() - T::lit(0.5) / x - series)
}

/// `|Γ(v + iτ)|²` for integer `v ≥ 1`.
///
/// Uses `Π_{n=0}^{v-1}(n² + τ²) · π/(τ sinh πτ)` with the `n = 0` factor
/// cancelled analytically, so `τ = 0` gives `((v-1)!)²` without a 0/0.
pub fn gamma_abs_sq<T: Real>(v: u32, tau: T) -> Result<T> {
    if v == 0 {
        return Err(Error::domain("gamma_abs_sq", "v must be ≥ 1"));
    }
    let x = T::PI() * tau.abs();
    let shape = if x < T::lit(1e-4) {
        T::one() - x * x / T::lit(6.0)
    } else if x > T::lit(20.0) {
        let e = (-x).exp();
        T::lit(2.0) * x * e / (T::one() - e * e)
    } else {
        x / x.sinh()
    };
    let t2 = tau * tau;
    let poly = (1..v).fold(T::one(), |acc, n| acc * (T::of(n as usize).powi(2) + t2));
    Ok(shape * poly)
}
