//! Trigonometric deformation of the odd-sphere spectra on N sites and the
//! regularized deformed free energies `F̄_d`, `F̄_dpc`.
//!
//! Angles are `θ_k = 2πk/N`. The deformed degeneracies are ratios of products
//! of `cos θ_n − cos θ_{p+v}`; every such difference is evaluated as a product
//! of sines so that the large-N limit does not cancel catastrophically.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::specfun::{
    alternating_sum, bessel_i_scaled, dirichlet_eta, integrate_semiinf, riemann_zeta,
    sum_with_tail, EvalResult, Method, SeriesPolicy,
};
use crate::sphere::{check_odd_dim, f_reference};
use crate::{Coupling, Real};

/// Odd dimension `d`, number of sites `N ≥ 2d` and coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeformSpec {
    d: u32,
    n: u32,
    coupling: Coupling,
}

impl DeformSpec {
    pub fn new(d: u32, n: u32, coupling: Coupling) -> Result<Self> {
        check_odd_dim("DeformSpec", d)?;
        if n < 2 * d {
            return Err(Error::validation(
                "DeformSpec",
                format!("N = {n} below the minimum 2d = {}", 2 * d),
            ));
        }
        Ok(DeformSpec { d, n, coupling })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn v(&self) -> u32 {
        (self.d - 1) / 2
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }
}

/// `sin(πk/N)` with `k` reduced modulo `2N` first.
fn sin_pi_frac<T: Real>(k: i64, n: u32) -> T {
    let two_n = 2 * n as i64;
    let k = k.rem_euclid(two_n);
    if k == 0 || k == n as i64 {
        return T::zero();
    }
    let (k, sign) = if k > n as i64 {
        (k - n as i64, -T::one())
    } else {
        (k, T::one())
    };
    // sin(πk/N) = sin(π(N−k)/N); use the smaller argument
    let k = k.min(n as i64 - k);
    sign * (T::PI() * T::from_i64(k).expect("index") / T::of(n as usize)).sin()
}

fn cos_pi_frac<T: Real>(k: i64, n: u32) -> T {
    sin_pi_frac(2 * k + n as i64, 2 * n)
}

/// Deformed eigenvalues `2[cos(π/N) − cos θ_{p+v}]` (conformal) or
/// `2[1 − cos θ_{p+v}] = 4 sin²(π(p+v)/N)` (pseudo-conformal), `p = 0..N`.
pub fn deformed_eigenvalues<T: Real>(spec: &DeformSpec) -> Vec<T> {
    (0..spec.n).map(|p| deformed_eigenvalue(spec, p)).collect()
}

pub(crate) fn deformed_eigenvalue<T: Real>(spec: &DeformSpec, p: u32) -> T {
    let n = spec.n;
    let s = (p + spec.v()) as i64;
    match spec.coupling {
        Coupling::PseudoConformal => {
            let x = sin_pi_frac::<T>(s, n);
            T::lit(4.0) * x * x
        }
        // cos a − cos b = 2 sin((a+b)/2) sin((b−a)/2) with a = π/N, b = 2πs/N
        Coupling::Conformal => {
            T::lit(4.0) * sin_pi_frac::<T>(2 * s + 1, 2 * n) * sin_pi_frac::<T>(2 * s - 1, 2 * n)
        }
    }
}

/// Normalized deformed degeneracy
/// `ḡ_p = Π_{n<v} (cos θ_n − cos θ_{p+v}) / (cos θ_n − cos θ_v)`, with `ḡ_0 = 1`.
///
/// `ḡ_p` vanishes exactly when `p + v ± n ≡ 0 (mod N)` for some `n < v`,
/// i.e. for `p ∈ [N−2v+1, N−1]`; those entries mirror the zero weights of the
/// continuum modes `l < v` and are returned as exact zeros.
pub fn deformed_degeneracy<T: Real>(spec: &DeformSpec, p: u32) -> Result<T> {
    let n = spec.n;
    if p >= n {
        return Err(Error::domain(
            "deformed_degeneracy",
            format!("p = {p} outside 0..{n}"),
        ));
    }
    let v = spec.v() as i64;
    let s = p as i64 + v;
    let mut g = T::one();
    for k in 0..v {
        if (k + s) % n as i64 == 0 || (s - k) % n as i64 == 0 {
            return Ok(T::zero());
        }
        let num = sin_pi_frac::<T>(k + s, n) * sin_pi_frac::<T>(k - s, n);
        let den = sin_pi_frac::<T>(k + v, n) * sin_pi_frac::<T>(k - v, n);
        g = g * num / den;
    }
    if g < T::zero() {
        return Err(Error::validation(
            "deformed_degeneracy",
            format!("ḡ_{p} = {g} < 0 at N = {n}"),
        ));
    }
    Ok(g)
}

/// `κ̄_v(t) = ½ Σ_{p=0}^{N−1} ḡ_p e^{−λ̄_p t}`, summed directly.
pub fn deformed_heat_trace<T: Real>(spec: &DeformSpec, t: T) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::domain("deformed_heat_trace", format!("t = {t} ≤ 0")));
    }
    let mut acc = T::zero();
    for p in 0..spec.n {
        acc = acc
            + deformed_degeneracy::<T>(spec, p)? * (-deformed_eigenvalue::<T>(spec, p) * t).exp();
    }
    Ok(acc / T::lit(2.0))
}

/// `Σ_{p=0}^{N−1} e^{2t cos θ_p}`.
pub fn cos_exp_sum<T: Real>(n: u32, t: T) -> T {
    (0..n as i64)
        .map(|p| (T::lit(2.0) * t * cos_pi_frac::<T>(2 * p, n)).exp())
        .sum()
}

/// `N Σ_{q∈ℤ} I_{Nq}(2t)`, the Bessel form of [`cos_exp_sum`].
pub fn bessel_sum<T: Real>(n: u32, t: T, policy: &SeriesPolicy<T>) -> Result<EvalResult<T>> {
    if n == 0 || !(t >= T::zero()) {
        return Err(Error::domain("bessel_sum", format!("N = {n}, t = {t}")));
    }
    let z = T::lit(2.0) * t;
    let nf = T::of(n as usize);
    // terms in units of e^{2t}; I_ν(z) decreases in ν faster than geometrically
    let scaled_policy = SeriesPolicy {
        abs_tol: policy.abs_tol / (nf * z.exp()),
        ..*policy
    };
    let term = |q: usize| {
        let i = bessel_i_scaled((n as usize * q) as i64, z).unwrap_or(T::nan());
        if q == 0 {
            i
        } else {
            T::lit(2.0) * i
        }
    };
    let tail = |q: usize, tq: T| {
        if q == 0 {
            return T::infinity();
        }
        let r = term(q + 1) / tq;
        if r < T::one() {
            tq * r / (T::one() - r)
        } else {
            T::infinity()
        }
    };
    let r = sum_with_tail(0, term, tail, &scaled_policy)?;
    let scale = nf * z.exp();
    Ok(EvalResult {
        value: r.value * scale,
        err_estimate: r.err_estimate * scale,
        ..r
    })
}

/// Closed form of
/// `∫₀^∞ dt/t {I_ν(2t) − ½[I_{ν−1}(2t) + I_{ν+1}(2t)]} e^{−2t cosh x}`:
/// `e^{−νx} (1/ν − ν cosh x/(ν²−1) − sinh x/(ν²−1))`.
pub fn bessel_diff_closed<T: Real>(nu: T, x: T) -> Result<T> {
    if !(nu > T::one()) {
        return Err(Error::domain("bessel_diff_closed", format!("ν = {nu} ≤ 1")));
    }
    if !(x >= T::zero()) {
        return Err(Error::domain("bessel_diff_closed", format!("x = {x} < 0")));
    }
    let d = nu * nu - T::one();
    Ok((-nu * x).exp() * (nu.recip() - nu * x.cosh() / d - x.sinh() / d))
}

fn check_n(op: &'static str, n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(Error::validation(
            op,
            format!("N = {n} below the minimum {min}"),
        ));
    }
    Ok(())
}

/// Sum of `coef(k) s(2k+1) / N^{2k}` over `k ≥ 1`, where `s` is η or ζ and
/// `|coef(k)| ≤ bound(k)`.
fn odd_value_series<T: Real>(
    n: u32,
    eta: bool,
    coef: impl Fn(usize) -> T,
    bound: impl Fn(usize) -> T,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    let n2 = T::of(n as usize).powi(2);
    let s = |k: usize| {
        let arg = T::of(2 * k + 1);
        if eta {
            dirichlet_eta(arg)
        } else {
            riemann_zeta(arg)
        }
        .unwrap_or(T::nan())
    };
    // η(s) < 1 and ζ(s) ≤ ζ(3) for s ≥ 3
    let smax = if eta {
        T::one()
    } else {
        T::lit(1.202_056_903_159_594_3)
    };
    let term = |k: usize| coef(k) * s(k) / n2.powi(k as i32);
    let tail = |k: usize, _t: T| {
        let mut acc = T::zero();
        let mut j = k + 1;
        loop {
            let b = bound(j) * smax / n2.powi(j as i32);
            acc = acc + b;
            if b < acc * T::epsilon() || j > k + 400 {
                break;
            }
            j += 1;
        }
        acc * T::lit(1.01)
    };
    sum_with_tail(1, term, tail, policy)
}

/// Deformed free energy on the deformed S³, from the closed series
///
/// conformal: `ln2/(8cos²(π/2N)) − cos(π/N)/(4sin²(π/N)) Σ_{k≥1} η(2k+1)/N^{2k}`,
/// pseudo-conformal: `1/(4sin²(π/N)) Σ_{k≥1} ζ(2k+1)/N^{2k}`.
pub fn deformed_f3<T: Real>(
    n: u32,
    coupling: Coupling,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    check_n("deformed_f3", n, 6)?;
    let a = T::PI() / T::of(n as usize);
    let sin2 = a.sin().powi(2);
    match coupling {
        Coupling::Conformal => {
            let s = odd_value_series(n, true, |_| T::one(), |_| T::one(), policy)?;
            let c = (a / T::lit(2.0)).cos();
            let shift = T::LN_2() / (T::lit(8.0) * c * c);
            Ok(s.affine(-a.cos() / (T::lit(4.0) * sin2), shift))
        }
        Coupling::PseudoConformal => {
            let s = odd_value_series(n, false, |_| T::one(), |_| T::one(), policy)?;
            Ok(s.affine((T::lit(4.0) * sin2).recip(), T::zero()))
        }
    }
}

/// Deformed free energy on the deformed S⁵, from the closed series with
/// prefactor `−1/(4 sin(π/N) sin²(2π/N) sin(3π/N))`:
///
/// conformal bracket: `2 sin³(π/2N) sin(3π/2N) ln2 + Σ_k {cos³(π/N) − 4^{k−1} cos(2π/N)} η(2k+1)/N^{2k}`,
/// pseudo-conformal bracket: `Σ_k {4^{k−1} − cos²(π/N)} ζ(2k+1)/N^{2k}`.
pub fn deformed_f5<T: Real>(
    n: u32,
    coupling: Coupling,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    check_n("deformed_f5", n, 10)?;
    let a = T::PI() / T::of(n as usize);
    let pre = -(T::lit(4.0) * a.sin() * (T::lit(2.0) * a).sin().powi(2) * (T::lit(3.0) * a).sin())
        .recip();
    let pow4 = |k: usize| T::lit(4.0).powi(k as i32 - 1);
    // each bracket coefficient is O(1/N²) at k = 1; split off the cancelling part
    let half = (a / T::lit(2.0)).sin();
    let scaled = SeriesPolicy {
        abs_tol: policy.abs_tol / pre.abs(),
        ..*policy
    };
    match coupling {
        Coupling::Conformal => {
            let c = a.cos();
            // cos³a − cos2a = (1 − cos a)(1 + cos a − cos²a)
            let lead = T::lit(2.0) * half * half * (T::one() + c - c * c);
            let cos2a = (T::lit(2.0) * a).cos();
            let coef = |k: usize| lead - (pow4(k) - T::one()) * cos2a;
            let s = odd_value_series(n, true, coef, |k| T::one() + pow4(k), &scaled)?;
            let ln2_term =
                T::lit(2.0) * half.powi(3) * (T::lit(3.0) * a / T::lit(2.0)).sin() * T::LN_2();
            Ok(s.affine(pre, pre * ln2_term))
        }
        Coupling::PseudoConformal => {
            let sin2 = a.sin().powi(2);
            let coef = |k: usize| sin2 + (pow4(k) - T::one());
            let s = odd_value_series(n, false, coef, |k| T::one() + pow4(k), &scaled)?;
            Ok(s.affine(pre, T::zero()))
        }
    }
}

/// `V_v(χ) = Π_{n=0}^{v−1} (cos θ_n − χ) = Σ_k b_k χ^k` and its value at `cos θ_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolynomial<T> {
    pub v: u32,
    pub n: u32,
    pub coeffs: Vec<T>,
    pub ref_value: T,
}

impl<T: Real> VPolynomial<T> {
    pub fn eval(&self, chi: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &b| acc * chi + b)
    }
}

pub fn vv_polynomial<T: Real>(v: u32, n: u32) -> Result<VPolynomial<T>> {
    if v == 0 {
        return Err(Error::domain("vv_polynomial", "v must be ≥ 1"));
    }
    check_n("vv_polynomial", n, 2 * (2 * v + 1))?;
    let mut coeffs = vec![T::one()];
    for k in 0..v as i64 {
        let c = cos_pi_frac::<T>(2 * k, n);
        let mut next = vec![T::zero(); coeffs.len() + 1];
        for (j, &b) in coeffs.iter().enumerate() {
            next[j] = next[j] + c * b;
            next[j + 1] = next[j + 1] - b;
        }
        coeffs = next;
    }
    let sum: T = coeffs.iter().copied().sum();
    if sum.abs() > T::lit(1e-13) {
        return Err(Error::validation(
            "vv_polynomial",
            format!("V_v(1) = {sum} ≠ 0"),
        ));
    }
    let vi = v as i64;
    let ref_value = (0..vi).fold(T::one(), |acc, k| {
        acc * T::lit(2.0) * sin_pi_frac::<T>(k + vi, n) * sin_pi_frac::<T>(vi - k, n)
    });
    Ok(VPolynomial {
        v,
        n,
        coeffs,
        ref_value,
    })
}

/// `Re V_v(cosh((τ − iπ)/N)) / V_v(cos θ_v)` as a product of per-factor ratios.
fn conformal_ratio<T: Real>(v: u32, n: u32, tau: T) -> T {
    let two_n = T::of(2 * n as usize);
    let mut acc = Complex::new(T::one(), T::zero());
    for k in 0..v as i64 {
        // cos θ_k − cosh w = −2 sin((θ_k + iw)/2) sin((θ_k − iw)/2), iw = (π + iτ)/N
        let im = tau / two_n;
        let plus = Complex::new(T::PI() * T::of(2 * k as usize + 1) / two_n, im).sin();
        let minus = Complex::new(
            T::PI() * T::from_i64(2 * k - 1).expect("index") / two_n,
            -im,
        )
        .sin();
        let den = sin_pi_frac::<T>(k + v as i64, n) * sin_pi_frac::<T>(k - v as i64, n);
        acc = acc * plus * minus / den;
    }
    acc.re
}

/// `Π_{k=1}^{v−1} (cos θ_k − cosh s) / (cos θ_k − cos θ_v)` and the `k = 0`
/// denominator `sin²(πv/N)`.
fn pc_rest<T: Real>(v: u32, n: u32, s: T) -> (T, T) {
    let sh = (s / T::lit(2.0)).sinh();
    let mut acc = T::one();
    for k in 1..v as i64 {
        let sk = sin_pi_frac::<T>(k, n);
        let den = sin_pi_frac::<T>(k + v as i64, n) * sin_pi_frac::<T>(k - v as i64, n);
        acc = acc * (sk * sk + sh * sh) / den;
    }
    let sv = sin_pi_frac::<T>(v as i64, n);
    (acc, sv * sv)
}

/// Pseudo-conformal integrand `−½ V_v(cosh(τ/N)) / (V_v(cos θ_v)(e^τ − 1))`.
fn pc_integrand<T: Real>(v: u32, n: u32, tau: T) -> T {
    let nf = T::of(n as usize);
    let s = tau / nf;
    let (rest, sv2) = pc_rest(v, n, s);
    // k = 0 factor is −sinh²(s/2)/sin²(πv/N) = −ε/(2 sin²(πv/N)), ε = cosh s − 1
    let eps_over_expm1 = if tau < T::lit(1e-3) {
        let s2 = s * s;
        let series =
            T::one() + s2 / T::lit(12.0) + s2 * s2 / T::lit(360.0) + s2 * s2 * s2 / T::lit(20160.0);
        let x = if tau == T::zero() {
            T::one()
        } else {
            tau / tau.exp_m1()
        };
        tau / (T::lit(2.0) * nf * nf) * series * x
    } else {
        T::lit(2.0) * (s / T::lit(2.0)).sinh().powi(2) / tau.exp_m1()
    };
    eps_over_expm1 * rest / (T::lit(4.0) * sv2)
}

/// Deformed free energy for any odd `d` from the integral forms
///
/// conformal: `1/(2V_v(cos θ_v)) ∫₀^∞ Re V_v(cosh((τ−iπ)/N)) / (e^τ + 1) dτ`,
/// pseudo-conformal: `−1/(2V_v(cos θ_v)) ∫₀^∞ V_v(cosh(τ/N)) / (e^τ − 1) dτ`.
pub fn deformed_f_general<T: Real>(
    d: u32,
    n: u32,
    coupling: Coupling,
    tol: T,
) -> Result<EvalResult<T>> {
    let spec = DeformSpec::new(d, n, coupling)?;
    let v = spec.v();
    // |V_v| grows at most like e^{vτ/N} and v/N ≤ 1/4
    let rate = T::lit(0.5);
    match coupling {
        Coupling::Conformal => integrate_semiinf(
            |tau: T| {
                let e = (-tau).exp();
                conformal_ratio(v, n, tau) * e / (T::one() + e) / T::lit(2.0)
            },
            rate,
            tol,
        ),
        Coupling::PseudoConformal => integrate_semiinf(|tau: T| pc_integrand(v, n, tau), rate, tol),
    }
}

/// S³ deformed free energy from the regularized Bessel-resummed q-series.
///
/// Conformal: `2 Σ_{q≥1} (−1)^q [1/q − q cos(π/N)/(q² − a²) − i(sin(π/N)/N)/(q² − a²)] − iπ + iN sin(π/N)`
/// with `a = 1/N`; the imaginary part must cancel and the real part is kept.
/// Pseudo-conformal: `2 Σ_{q≥1} [1/q − q/(q² − a²)]`, summed directly with
/// the midpoint-integral tail. Both are normalized by `−1/(4(1 − cos θ_1))`.
pub fn regularized_series_route<T: Real>(
    n: u32,
    coupling: Coupling,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    check_n("regularized_series_route", n, 6)?;
    let nf = T::of(n as usize);
    let a = nf.recip();
    let a2 = a * a;
    let s1 = sin_pi_frac::<T>(1, n);
    let norm = -(T::lit(8.0) * s1 * s1).recip();
    match coupling {
        Coupling::Conformal => {
            let c = cos_pi_frac::<T>(1, n);
            let sn = (T::PI() / nf).sin();
            // Σ_{q≥1} (−1)^q b_q = −Σ_{k≥0} (−1)^k b_{k+1}
            let re = alternating_sum(
                |k| {
                    let q = T::of(k + 1);
                    q.recip() - q * c / (q * q - a2)
                },
                policy,
            )?;
            let im = alternating_sum(
                |k| {
                    let q = T::of(k + 1);
                    (q * q - a2).recip()
                },
                policy,
            )?;
            let imag = T::lit(2.0) * sn / nf * im.value - T::PI() + nf * sn;
            let check = T::lit(1e-10).max(policy.abs_tol);
            if imag.abs() > check {
                return Err(Error::validation(
                    "regularized_series_route",
                    format!("imaginary part {imag} does not cancel"),
                ));
            }
            Ok(EvalResult {
                value: norm * T::lit(-2.0) * re.value,
                method: Method::Series,
                terms_or_nodes: re.terms_or_nodes + im.terms_or_nodes,
                err_estimate: (norm * T::lit(2.0)).abs() * re.err_estimate + imag.abs(),
            })
        }
        Coupling::PseudoConformal => {
            let q_max = 2000usize;
            let direct: T = (1..=q_max)
                .map(|q| {
                    let q = T::of(q);
                    a2 / (q * (q * q - a2))
                })
                .sum();
            let m = T::of(q_max) + T::lit(0.5);
            // Σ_{q>Q} f(q) ≈ ∫_{Q+½}^∞ f, f(x) = x/(x² − a²) − 1/x
            let tail = -(-a2 / (m * m)).ln_1p() / T::lit(2.0);
            let err = a2 / (T::lit(8.0) * m.powi(4));
            Ok(EvalResult {
                value: norm * T::lit(-2.0) * (direct + tail),
                method: Method::Series,
                terms_or_nodes: q_max,
                err_estimate: (norm * T::lit(2.0)).abs() * err,
            })
        }
    }
}

/// Deformed free energy by the preferred route: the closed series for
/// `d = 3, 5` and the integral representation otherwise.
pub fn deformed_free_energy<T: Real>(
    d: u32,
    n: u32,
    coupling: Coupling,
    tol: T,
) -> Result<EvalResult<T>> {
    DeformSpec::new(d, n, coupling)?;
    let policy = SeriesPolicy::with_tol(tol);
    match d {
        3 => deformed_f3(n, coupling, &policy),
        5 => deformed_f5(n, coupling, &policy),
        _ => deformed_f_general(d, n, coupling, tol),
    }
}

/// `|F̄(N) − F| / |F|` against the continuum free energy.
pub fn relative_error<T: Real>(d: u32, n: u32, coupling: Coupling, tol: T) -> Result<T> {
    let limit = f_reference::<T>(d, coupling)?;
    let f = deformed_free_energy(d, n, coupling, tol)?.value;
    Ok(((f - limit) / limit).abs())
}

/// Smallest `N ≥ 2d` at which the deformed free energy is within one percent
/// of the continuum value.
pub fn one_percent_threshold(d: u32, coupling: Coupling) -> Result<u32> {
    check_odd_dim("one_percent_threshold", d)?;
    for n in 2 * d..=100_000 {
        if relative_error::<f64>(d, n, coupling, 1e-12)? <= 0.01 {
            return Ok(n);
        }
    }
    Err(Error::no_convergence(
        "one_percent_threshold",
        format!("no N ≤ 100000 for d = {d}"),
    ))
}

/// Least-squares fit `F̄(N) ≈ c₀ + c₁ x + c₂ x²`, `x = π²/N²`, over `N ∈ [lo, hi]`.
pub fn expansion_coefficients<T: Real>(
    d: u32,
    coupling: Coupling,
    lo: u32,
    hi: u32,
) -> Result<[T; 3]> {
    if hi < lo + 3 {
        return Err(Error::domain(
            "expansion_coefficients",
            format!("range {lo}..={hi} too short"),
        ));
    }
    let pi2 = T::PI() * T::PI();
    let x_max = pi2 / T::of(lo as usize).powi(2);
    // normal equations in u = x / x_max ∈ (0, 1]
    let mut m = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for n in lo..=hi {
        let u = pi2 / T::of(n as usize).powi(2) / x_max;
        let f = deformed_free_energy(d, n, coupling, T::lit(1e-14))?.value;
        let basis = [T::one(), u, u * u];
        for i in 0..3 {
            rhs[i] = rhs[i] + basis[i] * f;
            for j in 0..3 {
                m[i][j] = m[i][j] + basis[i] * basis[j];
            }
        }
    }
    let det3 = |a: &[[T; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let det = det3(&m);
    let mut c = [T::zero(); 3];
    for (col, ci) in c.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = rhs[row];
        }
        *ci = det3(&mc) / det;
    }
    Ok([c[0], c[1] / x_max, c[2] / (x_max * x_max)])
}
