//! Spectra, degeneracies, heat traces and regularized free energies of a
//! scalar on odd spheres S^d.
//!
//! The massless free energies are available through three independent
//! routes: the zeta-regularized degeneracy polynomial (pseudo-conformal
//! coupling), integral representations over the real segment in `u`, and
//! integrals along the imaginary axis built from `|Γ(v + iτ)|²`. The
//! conformal reference values are the known closed forms in `ln 2` and odd
//! zeta values.

use num_complex::Complex;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::specfun::{
    alternating_sum, gamma_abs_sq, gamma_real, geometric_tail, integrate, integrate_semiinf,
    riemann_zeta, sum_with_tail, EvalResult, Method, SeriesPolicy,
};
use crate::{Coupling, Real};

/// Largest odd dimension accepted by the exact-arithmetic routines.
pub const MAX_DIM: u32 = 21;

pub(crate) fn check_odd_dim(op: &'static str, d: u32) -> Result<()> {
    if d < 3 || d % 2 == 0 || d > MAX_DIM {
        return Err(Error::domain(
            op,
            format!("d = {d} is not an odd dimension in 3..={MAX_DIM}"),
        ));
    }
    Ok(())
}

/// A scalar on S^d of radius `a` with dimensionless mass `ma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec<T> {
    d: u32,
    coupling: Coupling,
    ma: T,
}

/// The mass parameter `y` entering the S³ free energy. It is real, or
/// purely imaginary for a conformal scalar lighter than `1/(2a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassParam<T> {
    /// `y ≥ 0`.
    Real(T),
    /// `y = i·b` with `0 < b ≤ 1/2`.
    Imaginary(T),
}

impl<T: Real> SphereSpec<T> {
    pub fn new(d: u32, coupling: Coupling, ma: T) -> Result<Self> {
        check_odd_dim("SphereSpec", d)?;
        if !(ma >= T::zero()) || !ma.is_finite() {
            return Err(Error::validation(
                "SphereSpec",
                format!("ma = {ma} must be finite and ≥ 0"),
            ));
        }
        Ok(SphereSpec { d, coupling, ma })
    }

    pub fn massless(d: u32, coupling: Coupling) -> Result<Self> {
        Self::new(d, coupling, T::zero())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `v = (d-1)/2`.
    pub fn v(&self) -> u32 {
        (self.d - 1) / 2
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn ma(&self) -> T {
        self.ma
    }

    /// Curvature coupling ξ for this spec.
    pub fn xi(&self) -> T {
        let d = T::of(self.d as usize);
        match self.coupling {
            Coupling::Conformal => (d - T::lit(2.0)) / (T::lit(4.0) * (d - T::one())),
            Coupling::PseudoConformal => (d - T::one()) / (T::lit(4.0) * d),
        }
    }

    /// `y² = m²a² - 1/4` (conformal) or `y = ma` (pseudo-conformal).
    pub fn mass_param(&self) -> MassParam<T> {
        match self.coupling {
            Coupling::PseudoConformal => MassParam::Real(self.ma),
            Coupling::Conformal => {
                let y2 = self.ma * self.ma - T::lit(0.25);
                if y2 >= T::zero() {
                    MassParam::Real(y2.sqrt())
                } else {
                    MassParam::Imaginary((-y2).sqrt())
                }
            }
        }
    }
}

/// One level of the spectrum: eigenvalue `a²λ_l` and multiplicity `g_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMode<T> {
    pub l: u64,
    pub eig: T,
    pub deg: u128,
}

/// `a²λ_l` for the spec's coupling and mass.
pub fn eigenvalue<T: Real>(spec: &SphereSpec<T>, l: u64) -> T {
    let shifted = T::from_u64(l).expect("index") + T::of(spec.v() as usize);
    let base = shifted * shifted + spec.ma * spec.ma;
    match spec.coupling {
        Coupling::Conformal => base - T::lit(0.25),
        Coupling::PseudoConformal => base,
    }
}

/// `a²λ_l = l(l + d - 1) + ξ d(d-1) + m²a²` for an arbitrary coupling ξ.
pub fn eigenvalue_general<T: Real>(d: u32, xi: T, ma: T, l: u64) -> T {
    let lf = T::from_u64(l).expect("index");
    let df = T::of(d as usize);
    lf * (lf + df - T::one()) + xi * df * (df - T::one()) + ma * ma
}

pub fn mode<T: Real>(spec: &SphereSpec<T>, l: u64) -> Result<SphereMode<T>> {
    Ok(SphereMode {
        l,
        eig: eigenvalue(spec, l),
        deg: degeneracy(spec.d, l)?,
    })
}

fn binom(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

fn overflow(l: u64, d: u32) -> Error {
    Error::overflow("degeneracy", format!("g_{l} on S^{d} exceeds u128"))
}

/// `g_l = C(d+l, d) - C(d+l-2, d)`.
pub fn degeneracy_binomial(d: u32, l: u64) -> Result<u128> {
    let d64 = d as u64;
    let a = binom(d64 + l, d64).ok_or_else(|| overflow(l, d))?;
    let b = if l >= 2 {
        binom(d64 + l - 2, d64).ok_or_else(|| overflow(l, d))?
    } else {
        0
    };
    Ok(a - b)
}

/// `g_l = 2(l + v) Π_{n=1}^{d-2}(l + n) / (d-1)!`.
pub fn degeneracy_product(d: u32, l: u64) -> Result<u128> {
    let v = ((d - 1) / 2) as u128;
    let l = l as u128;
    let mut num: u128 = 2 * (l + v);
    for n in 1..=(d as u128 - 2) {
        num = num
            .checked_mul(l + n)
            .ok_or_else(|| overflow(l as u64, d))?;
    }
    let fact: u128 = (1..=(d as u128 - 1)).product();
    Ok(num / fact)
}

/// `g_l = 2(l+v)² Π_{n=1}^{v-1}((l+v)² - n²) / (2v)!`, the odd-sphere form.
pub fn degeneracy_odd(d: u32, l: u64) -> Result<u128> {
    let v = ((d - 1) / 2) as u128;
    let s = l as u128 + v;
    let mut num: u128 = 2u128.checked_mul(s * s).ok_or_else(|| overflow(l, d))?;
    for n in 1..v {
        num = num
            .checked_mul(s * s - n * n)
            .ok_or_else(|| overflow(l, d))?;
    }
    let fact: u128 = (1..=2 * v).product();
    Ok(num / fact)
}

/// Multiplicity of the `l`-th eigenvalue on S^d, in exact integer arithmetic.
///
/// Computed from the binomial form; the product and odd-sphere forms are
/// evaluated too and must agree exactly.
pub fn degeneracy(d: u32, l: u64) -> Result<u128> {
    check_odd_dim("degeneracy", d)?;
    let g = degeneracy_binomial(d, l)?;
    let p = degeneracy_product(d, l)?;
    let o = degeneracy_odd(d, l)?;
    if g != p || g != o {
        return Err(Error::validation(
            "degeneracy",
            format!("forms disagree at d = {d}, l = {l}: {g}, {p}, {o}"),
        ));
    }
    Ok(g)
}

/// Weight `2l² Π_{n=1}^{v-1}(l² - n²) / (2v)!` of the reindexed trace, which
/// vanishes for `l < v` and equals `g_{l-v}` for `l ≥ v`.
pub fn reindexed_weight<T: Real>(v: u32, l: i64) -> T {
    let l2 = T::from_i64(l * l).expect("index");
    let mut w = T::lit(2.0) * l2;
    for n in 1..v as i64 {
        w = w * (l2 - T::from_i64(n * n).expect("index"));
    }
    let fact = (1..=2 * v as usize).fold(T::one(), |acc, k| acc * T::of(k));
    w / fact
}

fn degeneracy_float<T: Real>(v: u32, l: u64) -> T {
    reindexed_weight(v, l as i64 + v as i64)
}

/// Heat-kernel trace `κ(t) = Σ_l g_l e^{-a²λ_l t}`.
///
/// Once the term ratio drops below one it keeps decreasing, so the tail is
/// bounded geometrically by the ratio at the last retained term.
pub fn heat_trace<T: Real>(
    spec: &SphereSpec<T>,
    t: T,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    if !(t > T::zero()) {
        return Err(Error::domain("heat_trace", format!("t = {t} ≤ 0")));
    }
    let v = spec.v();
    let term =
        |l: usize| degeneracy_float::<T>(v, l as u64) * (-eigenvalue(spec, l as u64) * t).exp();
    let tail = |l: usize, tl: T| {
        if tl == T::zero() {
            return T::zero();
        }
        let r = term(l + 1) / tl;
        if r < T::one() {
            tl * r / (T::one() - r)
        } else {
            T::infinity()
        }
    };
    sum_with_tail(0, term, tail, policy)
}

/// Mass argument of [`f3_conformal_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum F3Mass<T> {
    /// Real `y ≥ 0`.
    Real(T),
    /// The massless conformal point `y = i/2`.
    MasslessConformal,
}

impl<T: Real> TryFrom<MassParam<T>> for F3Mass<T> {
    type Error = Error;

    fn try_from(m: MassParam<T>) -> Result<Self> {
        match m {
            MassParam::Real(y) => Ok(F3Mass::Real(y)),
            MassParam::Imaginary(b) if b == T::lit(0.5) => Ok(F3Mass::MasslessConformal),
            MassParam::Imaginary(b) => Err(Error::domain(
                "f3_conformal_series",
                format!("imaginary y = {b}i other than i/2"),
            )),
        }
    }
}

/// Free energy on S³ from the Poisson-resummed trace:
/// `Σ_{l≥1} (y²/2l + y/2πl² + 1/4π²l³) e^{-2πyl} - (π/6) y³`.
///
/// `y = 0` is summed in closed form as `ζ(3)/(4π²)`. At `y = i/2` the series
/// becomes alternating; both its real and imaginary parts are summed and
/// checked against `ln2/8 - 3ζ(3)/(16π²)` and zero before the closed form is
/// returned.
pub fn f3_conformal_series<T: Real>(
    y: F3Mass<T>,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    let pi = T::PI();
    let pi2 = pi * pi;
    match y {
        F3Mass::Real(y) if !(y >= T::zero()) => {
            Err(Error::domain("f3_conformal_series", format!("y = {y} < 0")))
        }
        F3Mass::Real(y) if y == T::zero() => Ok(EvalResult::closed_form(
            riemann_zeta(T::lit(3.0))? / (T::lit(4.0) * pi2),
        )),
        F3Mass::Real(y) => {
            let r = (-T::TAU() * y).exp();
            let term = |l: usize| {
                let lf = T::of(l);
                (y * y / (T::lit(2.0) * lf)
                    + y / (T::TAU() * lf * lf)
                    + (T::lit(4.0) * pi2 * lf * lf * lf).recip())
                    * r.powf(lf)
            };
            let sum = sum_with_tail(1, term, |_, t| geometric_tail(t, r), policy)?;
            Ok(sum.affine(T::one(), -pi / T::lit(6.0) * y * y * y))
        }
        F3Mass::MasslessConformal => {
            let zeta3 = riemann_zeta(T::lit(3.0))?;
            let closed = T::LN_2() / T::lit(8.0) - T::lit(3.0) * zeta3 / (T::lit(16.0) * pi2);
            // Σ_{l≥1} (-1)^l a_l = -Σ_{k≥0} (-1)^k a_{k+1}
            let re = alternating_sum(
                |k| {
                    let l = T::of(k + 1);
                    -(l * T::lit(8.0)).recip() + (T::lit(4.0) * pi2 * l * l * l).recip()
                },
                policy,
            )?;
            let im = alternating_sum(
                |k| {
                    let l = T::of(k + 1);
                    (T::lit(4.0) * pi * l * l).recip()
                },
                policy,
            )?;
            let re_val = -re.value;
            let im_val = -im.value + pi / T::lit(48.0);
            let check = T::lit(1e-10).max(policy.abs_tol);
            if (re_val - closed).abs() > check || im_val.abs() > check {
                return Err(Error::validation(
                    "f3_conformal_series",
                    format!("alternating route gives {re_val} + {im_val}i, closed form {closed}"),
                ));
            }
            Ok(EvalResult {
                value: closed,
                method: Method::ClosedForm,
                terms_or_nodes: re.terms_or_nodes + im.terms_or_nodes,
                err_estimate: (re_val - closed).abs(),
            })
        }
    }
}

/// Coefficients `c_k` (k = 0..=v) with
/// `2l² Π_{n=1}^{v-1}(l² - n²)/(2v)! = Σ_k c_k l^{2k}`, exactly.
pub fn degeneracy_polynomial(d: u32) -> Result<Vec<Ratio<i128>>> {
    check_odd_dim("degeneracy_polynomial", d)?;
    let v = ((d - 1) / 2) as usize;
    // polynomial in L = l²
    let mut coef: Vec<i128> = vec![0, 2];
    for n in 1..v as i128 {
        let mut next = vec![0i128; coef.len() + 1];
        for (k, &c) in coef.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * n * n;
        }
        coef = next;
    }
    let fact: i128 = (1..=2 * v as i128).product();
    Ok(coef.into_iter().map(|c| Ratio::new(c, fact)).collect())
}

/// `ζ'(-2k) = (-1)^k (2k)! ζ(2k+1) / (2 (2π)^{2k})` for `k ≥ 1`.
pub fn zeta_prime_negative_even<T: Real>(k: u32) -> Result<T> {
    if k == 0 {
        return Err(Error::domain("zeta_prime_negative_even", "k must be ≥ 1"));
    }
    let two_k = 2 * k as usize;
    let fact = (1..=two_k).fold(T::one(), |acc, j| acc * T::of(j));
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    Ok(sign * fact * riemann_zeta(T::of(two_k + 1))? / (T::lit(2.0) * T::TAU().powi(two_k as i32)))
}

fn ratio_to<T: Real>(r: &Ratio<i128>) -> T {
    T::from_i128(*r.numer()).expect("numerator") / T::from_i128(*r.denom()).expect("denominator")
}

/// Zeta-regularized free energy of a massless pseudo-conformal scalar on S^d.
///
/// The reindexed trace is `½ Σ_{l∈ℤ} P(l²) e^{-l²t}` with `P` the degeneracy
/// polynomial. Each monomial `l^{2k}` contributes
/// `-½ lim_{s→0} Γ(s) ζ(2s - 2k) = -ζ'(-2k)`, the trivial zero of ζ at
/// `-2k` cancelling the pole of Γ.
pub fn f_pc_zeta<T: Real>(d: u32) -> Result<T> {
    let coef = degeneracy_polynomial(d)?;
    let mut acc = T::zero();
    for (k, c) in coef.iter().enumerate().skip(1) {
        if *c.numer() != 0 {
            acc = acc - ratio_to::<T>(c) * zeta_prime_negative_even::<T>(k as u32)?;
        }
    }
    if *coef[0].numer() != 0 {
        return Err(Error::validation(
            "f_pc_zeta",
            "degeneracy polynomial has a constant term",
        ));
    }
    Ok(acc)
}

// F_d = sign / 2^shift · (a₀ ln 2 + Σ_j a_j ζ(2j+1)/π^{2j}); (num, den) pairs.
struct ConformalRow {
    negative: bool,
    shift: i32,
    coef: &'static [(i64, i64)],
}

const CONFORMAL_TABLE: [ConformalRow; 5] = [
    ConformalRow {
        negative: false,
        shift: 4,
        coef: &[(2, 1), (-3, 1)],
    },
    ConformalRow {
        negative: true,
        shift: 8,
        coef: &[(2, 1), (2, 1), (-15, 1)],
    },
    ConformalRow {
        negative: false,
        shift: 12,
        coef: &[(4, 1), (82, 15), (-10, 1), (-63, 1)],
    },
    ConformalRow {
        negative: true,
        shift: 16,
        coef: &[(10, 1), (1588, 105), (-2, 1), (-126, 1), (-255, 1)],
    },
    ConformalRow {
        negative: false,
        shift: 20,
        coef: &[
            (28, 1),
            (7794, 175),
            (1940, 63),
            (-1218, 5),
            (-850, 1),
            (-1023, 1),
        ],
    },
];

/// Free energy of a massless conformal scalar on S^d, `d ∈ {3,5,7,9,11}`, from
/// its closed form in `ln 2` and `ζ(3), …, ζ(d)`.
pub fn f_conformal_reference<T: Real>(d: u32) -> Result<T> {
    if !matches!(d, 3 | 5 | 7 | 9 | 11) {
        return Err(Error::domain(
            "f_conformal_reference",
            format!("d = {d} not in {{3,5,7,9,11}}"),
        ));
    }
    let row = &CONFORMAL_TABLE[((d - 3) / 2) as usize];
    let mut acc = T::zero();
    for (j, &(num, den)) in row.coef.iter().enumerate() {
        let c = T::from_i64(num).expect("coef") / T::from_i64(den).expect("coef");
        let basis = if j == 0 {
            T::LN_2()
        } else {
            riemann_zeta(T::of(2 * j + 1))? / T::PI().powi(2 * j as i32)
        };
        acc = acc + c * basis;
    }
    let scale = T::lit(2.0).powi(-row.shift);
    Ok(if row.negative {
        -scale * acc
    } else {
        scale * acc
    })
}

/// Reference free energy for either coupling: the closed form (conformal) or
/// the zeta-regularized value (pseudo-conformal).
pub fn f_reference<T: Real>(d: u32, coupling: Coupling) -> Result<T> {
    match coupling {
        Coupling::Conformal => f_conformal_reference(d),
        Coupling::PseudoConformal => f_pc_zeta(d),
    }
}

fn odd_sign<T: Real>(v: u32) -> T {
    if v % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Free energy from the real-segment integral representation
/// `F̃ = (1/Γ(1+d)) ∫ u sin(πu) Γ(d/2+u) Γ(d/2-u) du`, `F = -F̃ / sin(πd/2)`,
/// over `[0, 1]` (conformal) or `[-1/2, 1/2]` (pseudo-conformal).
pub fn f_integral_rep<T: Real>(d: u32, coupling: Coupling, tol: T) -> Result<EvalResult<T>> {
    check_odd_dim("f_integral_rep", d)?;
    let half_d = T::of(d as usize) / T::lit(2.0);
    let norm = gamma_real(T::of(d as usize + 1))?;
    let integrand = |u: T| {
        let g =
            gamma_real(half_d + u).unwrap_or(T::nan()) * gamma_real(half_d - u).unwrap_or(T::nan());
        u * (T::PI() * u).sin() * g / norm
    };
    let (lo, hi) = match coupling {
        Coupling::Conformal => (T::zero(), T::one()),
        Coupling::PseudoConformal => (-T::lit(0.5), T::lit(0.5)),
    };
    let r = integrate(integrand, lo, hi, tol)?;
    // sin(πd/2) = (-1)^v for odd d
    let v = (d - 1) / 2;
    Ok(r.affine(-odd_sign::<T>(v), T::zero()))
}

/// Free energy from integrals along the imaginary axis.
///
/// Pseudo-conformal: `-(-1)^v/(2v)! ∫₀^∞ |Γ(v+iτ)|² τ e^{-πτ} dτ`.
/// Conformal: the same with `τ → w = τ - i/2`, real part taken, where
/// `Γ(v-iw)Γ(v+iw) w e^{-πw} = 2π w² Π_{n=1}^{v-1}(n² + w²) · (-e^{-2πτ})/(1 + e^{-2πτ})`.
pub fn f_imaginary_axis<T: Real>(d: u32, coupling: Coupling, tol: T) -> Result<EvalResult<T>> {
    check_odd_dim("f_imaginary_axis", d)?;
    let v = (d - 1) / 2;
    let fact = (1..=2 * v as usize).fold(T::one(), |acc, k| acc * T::of(k));
    let prefactor = -odd_sign::<T>(v) / fact;
    let decay = T::TAU() * T::lit(0.9);
    let r = match coupling {
        Coupling::PseudoConformal => integrate_semiinf(
            |tau: T| gamma_abs_sq(v, tau).unwrap_or(T::nan()) * tau * (-T::PI() * tau).exp(),
            decay,
            tol / prefactor.abs(),
        )?,
        Coupling::Conformal => integrate_semiinf(
            |tau: T| {
                let w = Complex::new(tau, -T::lit(0.5));
                let mut p = w * w;
                for n in 1..v {
                    let n2 = T::of(n as usize * n as usize);
                    p = p * (w * w + n2);
                }
                let e = (-T::TAU() * tau).exp();
                (p * (-T::TAU() * e / (T::one() + e))).re
            },
            decay,
            tol / prefactor.abs(),
        )?,
    };
    Ok(r.affine(prefactor, T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    fn zeta(s: f64) -> f64 {
        riemann_zeta(s).unwrap()
    }

    fn conf(d: u32) -> SphereSpec<f64> {
        SphereSpec::massless(d, Coupling::Conformal).unwrap()
    }

    fn pc(d: u32) -> SphereSpec<f64> {
        SphereSpec::massless(d, Coupling::PseudoConformal).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SphereSpec::<f64>::massless(4, Coupling::Conformal).is_err());
        assert!(SphereSpec::<f64>::massless(1, Coupling::Conformal).is_err());
        assert!(SphereSpec::new(3, Coupling::Conformal, -1.0).is_err());
        assert_eq!(conf(3).mass_param(), MassParam::Imaginary(0.5));
        assert_eq!(pc(3).mass_param(), MassParam::Real(0.0));
        assert_eq!(conf(7).v(), 3);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(&conf(3), 0), 0.75);
        assert_eq!(eigenvalue(&pc(3), 0), 1.0);
        assert_eq!(eigenvalue_general(3, 0.0, 0.0, 0), 0.0);
        for d in [3u32, 5, 7, 9, 11] {
            for (spec, l) in [(conf(d), 4u64), (pc(d), 7)] {
                let general = eigenvalue_general(d, spec.xi(), 0.0, l);
                assert!((general - eigenvalue(&spec, l)).abs() < 1e-12);
            }
            // strictly increasing in l
            for l in 0..20 {
                assert!(eigenvalue(&conf(d), l + 1) > eigenvalue(&conf(d), l));
            }
        }
        let m = SphereSpec::new(5, Coupling::PseudoConformal, 0.3f64).unwrap();
        assert!((eigenvalue(&m, 1) - (9.0 + 0.09)).abs() < 1e-14);
    }

    #[test]
    fn degeneracy_examples() {
        for d in [3u32, 5, 7, 9, 11] {
            assert_eq!(degeneracy(d, 0).unwrap(), 1);
        }
        assert_eq!(degeneracy(3, 2).unwrap(), 9);
        assert_eq!(degeneracy(5, 2).unwrap(), 20);
        for l in 0..30u64 {
            assert_eq!(degeneracy(3, l).unwrap(), ((l + 1) * (l + 1)) as u128);
            let s = (l + 2) as u128;
            assert_eq!(degeneracy(5, l).unwrap(), s * s * (s * s - 1) / 12);
        }
        assert!(degeneracy(4, 1).is_err());
        let m = mode(&pc(5), 2).unwrap();
        assert_eq!((m.deg, m.eig), (20, 16.0));
    }

    #[test]
    fn degeneracy_forms_agree_exactly() {
        for d in (3..=11).step_by(2) {
            for l in 0..=50u64 {
                let b = degeneracy_binomial(d, l).unwrap();
                assert_eq!(b, degeneracy_product(d, l).unwrap());
                assert_eq!(b, degeneracy_odd(d, l).unwrap());
            }
        }
    }

    #[test]
    fn reindexing_identity() {
        for d in [5u32, 7] {
            let v = (d - 1) / 2;
            for l in 0..v as i64 {
                assert_eq!(reindexed_weight::<f64>(v, l), 0.0);
                assert_eq!(reindexed_weight::<f64>(v, -l), 0.0);
            }
            for l in 0..40u64 {
                let g = degeneracy(d, l).unwrap() as f64;
                assert_eq!(reindexed_weight::<f64>(v, l as i64 + v as i64), g);
            }
        }
    }

    #[test]
    fn heat_trace_examples() {
        let p = SeriesPolicy::default();
        let k = heat_trace(&conf(3), 1.0, &p).unwrap().value;
        let brute: f64 = (1..=200)
            .map(|l| (l * l) as f64 * (-((l * l) as f64 - 0.25)).exp())
            .sum();
        assert!((k - brute).abs() < 1e-14);
        // large t: lowest mode dominates with unit coefficient
        let t = 30.0;
        let k = heat_trace(&conf(3), t, &p).unwrap().value;
        assert!((k / (-0.75 * t).exp() - 1.0).abs() < 1e-12);
        assert!(heat_trace(&conf(3), 0.0, &p).is_err());
    }

    #[test]
    fn heat_trace_weyl_scaling() {
        let p = SeriesPolicy::default();
        for d in [3u32, 5, 7] {
            for spec in [conf(d), pc(d)] {
                let (t0, t1) = (1e-4, 1e-3);
                let k0 = heat_trace(&spec, t0, &p).unwrap().value;
                let k1 = heat_trace(&spec, t1, &p).unwrap().value;
                let slope = (k1.ln() - k0.ln()) / (t1.ln() - t0.ln());
                assert!(
                    (slope + d as f64 / 2.0).abs() < 0.05,
                    "d = {d}, slope {slope}"
                );
            }
        }
    }

    #[test]
    fn f3_series_examples() {
        let p = SeriesPolicy::default();
        let y0 = f3_conformal_series(F3Mass::Real(0.0), &p).unwrap().value;
        assert!((y0 - zeta(3.0) / (4.0 * PI * PI)).abs() < 1e-15);
        assert!((y0 - 0.030_448_5).abs() < 1e-6);
        let massless = f3_conformal_series(F3Mass::<f64>::MasslessConformal, &p)
            .unwrap()
            .value;
        assert!((massless - (LN_2 / 8.0 - 3.0 * zeta(3.0) / (16.0 * PI * PI))).abs() < 1e-15);
        assert!((massless - 0.063_807_1).abs() < 1e-6);

        let y = 2.0;
        let r = f3_conformal_series(F3Mass::Real(y), &p).unwrap();
        let cubic = -PI / 6.0 * y * y * y;
        let mut brute = 0.0;
        for l in 1..=60 {
            let lf = l as f64;
            brute += (y * y / (2.0 * lf)
                + y / (2.0 * PI * lf * lf)
                + 1.0 / (4.0 * PI * PI * lf.powi(3)))
                * (-2.0 * PI * y * lf).exp();
        }
        assert!((r.value - (brute + cubic)).abs() < 1e-14);
        assert!(brute.abs() < 2e-5 * cubic.abs());
    }

    #[test]
    fn f3_small_mass_is_continuous() {
        let p = SeriesPolicy::default();
        let a = f3_conformal_series(F3Mass::Real(1e-4f64), &p)
            .unwrap()
            .value;
        let b = f3_conformal_series(F3Mass::Real(0.0), &p).unwrap().value;
        assert!((a - b).abs() < 1e-5);
        assert!(f3_conformal_series(F3Mass::Real(-1.0), &p).is_err());
        let off_axis = SphereSpec::new(3, Coupling::Conformal, 0.3)
            .unwrap()
            .mass_param();
        assert!(F3Mass::try_from(off_axis).is_err());
    }

    #[test]
    fn degeneracy_polynomial_values() {
        let c3 = degeneracy_polynomial(3).unwrap();
        assert_eq!(c3, vec![Ratio::from_integer(0), Ratio::from_integer(1)]);
        let c5 = degeneracy_polynomial(5).unwrap();
        assert_eq!(
            c5,
            vec![
                Ratio::from_integer(0),
                Ratio::new(-1, 12),
                Ratio::new(1, 12)
            ]
        );
        let c7 = degeneracy_polynomial(7).unwrap();
        assert_eq!(
            c7,
            vec![
                Ratio::from_integer(0),
                Ratio::new(1, 90),
                Ratio::new(-1, 72),
                Ratio::new(1, 360)
            ]
        );
    }

    #[test]
    fn zeta_regularized_pc_values() {
        let pi2 = PI * PI;
        let f3 = f_pc_zeta::<f64>(3).unwrap();
        assert!((f3 - zeta(3.0) / (4.0 * pi2)).abs() < 1e-16);
        let f5 = f_pc_zeta::<f64>(5).unwrap();
        let f5_expect = -zeta(3.0) / (48.0 * pi2) - zeta(5.0) / (16.0 * pi2 * pi2);
        assert!((f5 - f5_expect).abs() < 1e-16);
        let f7 = f_pc_zeta::<f64>(7).unwrap();
        let f7_expect = zeta(3.0) / (360.0 * pi2)
            + zeta(5.0) / (96.0 * pi2.powi(2))
            + zeta(7.0) / (64.0 * pi2.powi(3));
        assert!((f7 - f7_expect).abs() < 1e-17);
        let f9_expect = -zeta(3.0) / (2240.0 * pi2)
            - 7.0 * zeta(5.0) / (3840.0 * pi2.powi(2))
            - zeta(7.0) / (256.0 * pi2.powi(3))
            - zeta(9.0) / (256.0 * pi2.powi(4));
        assert!((f_pc_zeta::<f64>(9).unwrap() - f9_expect).abs() < 1e-17);
        let f11_expect = zeta(3.0) / (12600.0 * pi2)
            + 41.0 * zeta(5.0) / (120960.0 * pi2.powi(2))
            + 13.0 * zeta(7.0) / (15360.0 * pi2.powi(3))
            + zeta(9.0) / (768.0 * pi2.powi(4))
            + zeta(11.0) / (1024.0 * pi2.powi(5));
        assert!((f_pc_zeta::<f64>(11).unwrap() - f11_expect).abs() < 1e-17);
        assert!(f_pc_zeta::<f64>(4).is_err());
        let printed = [0.0304, -3.20e-3, 4.66e-4, -7.83e-5, 1.43e-5];
        for (d, p) in [3u32, 5, 7, 9, 11].into_iter().zip(printed) {
            let f = f_pc_zeta::<f64>(d).unwrap();
            assert_eq!(format!("{f:.2e}"), format!("{p:.2e}"), "d = {d}");
        }
    }

    #[test]
    fn conformal_reference_values() {
        let f3 = f_conformal_reference::<f64>(3).unwrap();
        assert!((f3 - (2.0 * LN_2 - 3.0 * zeta(3.0) / (PI * PI)) / 16.0).abs() < 1e-16);
        let printed = [0.0638, -5.74e-3, 7.97e-4, -1.31e-4, 2.37e-5];
        for (d, p) in [3u32, 5, 7, 9, 11].into_iter().zip(printed) {
            let f = f_conformal_reference::<f64>(d).unwrap();
            assert_eq!(format!("{f:.2e}"), format!("{p:.2e}"), "d = {d}");
        }
        assert!(f_conformal_reference::<f64>(13).is_err());
    }

    #[test]
    fn integral_representation_routes() {
        for d in [3u32, 5, 7, 9, 11] {
            let c = f_integral_rep(d, Coupling::Conformal, 1e-12).unwrap().value;
            let p = f_integral_rep(d, Coupling::PseudoConformal, 1e-12)
                .unwrap()
                .value;
            assert!(
                (c - f_conformal_reference::<f64>(d).unwrap()).abs() < 1e-8,
                "d = {d}"
            );
            assert!((p - f_pc_zeta::<f64>(d).unwrap()).abs() < 1e-8, "d = {d}");
        }
        let c3 = f_integral_rep(3, Coupling::Conformal, 1e-12f64)
            .unwrap()
            .value;
        assert!((c3 - 0.063_807).abs() < 1e-6);
    }

    #[test]
    fn pc_integrand_is_even() {
        for d in [3u32, 7] {
            let half_d = d as f64 / 2.0;
            let f = |u: f64| {
                u * (PI * u).sin()
                    * gamma_real(half_d + u).unwrap()
                    * gamma_real(half_d - u).unwrap()
            };
            for u in [0.05, 0.2, 0.37, 0.5] {
                assert!((f(u) - f(-u)).abs() < 1e-13 * f(u).abs().max(1.0));
            }
            let full = integrate(f, -0.5, 0.5, 1e-13).unwrap().value;
            let half = integrate(f, 0.0, 0.5, 1e-13).unwrap().value;
            assert!((full - 2.0 * half).abs() < 1e-12);
        }
    }

    #[test]
    fn imaginary_axis_routes() {
        for d in [3u32, 5, 7, 9, 11] {
            let c = f_imaginary_axis(d, Coupling::Conformal, 1e-12)
                .unwrap()
                .value;
            let p = f_imaginary_axis(d, Coupling::PseudoConformal, 1e-12)
                .unwrap()
                .value;
            assert!(
                (c - f_conformal_reference::<f64>(d).unwrap()).abs() < 1e-7,
                "d = {d}: {c}"
            );
            assert!(
                (p - f_pc_zeta::<f64>(d).unwrap()).abs() < 1e-7,
                "d = {d}: {p}"
            );
        }
        let p3 = f_imaginary_axis(3, Coupling::PseudoConformal, 1e-12f64)
            .unwrap()
            .value;
        assert!((p3 - 0.030_448).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn heat_trace_positive(t in 1e-3f64..10.0, d in prop::sample::select(vec![3u32, 5, 7, 9, 11])) {
            let k = heat_trace(&conf(d), t, &SeriesPolicy::default()).unwrap();
            prop_assert!(k.value > 0.0 && k.value.is_finite());
        }
    }
}
