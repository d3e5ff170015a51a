//! Free energies on the circle S¹ and on the cycle graph C_N.
//!
//! On C_N the lattice mass is tuned as `μ a₀ = 2 sinh(π m a / N)`, which makes
//! the regularized free energy independent of N and equal to the continuum
//! value `ln(2 sinh π m a)`. Three routes are provided: the closed form, the
//! modified-Bessel expansion of the heat trace with the `q = 0` divergence
//! dropped, and the exact finite-N log-determinant.

use crate::error::{Error, Result};
use crate::specfun::{sum_with_tail, EvalResult, SeriesPolicy};
use crate::Real;

/// The cycle graph C_N carrying a scalar of dimensionless mass `ma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleSpec<T> {
    n: usize,
    ma: T,
}

impl<T: Real> CycleSpec<T> {
    pub fn new(n: usize, ma: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation("CycleSpec", format!("N = {n} < 3")));
        }
        if !(ma >= T::zero()) || !ma.is_finite() {
            return Err(Error::validation(
                "CycleSpec",
                format!("ma = {ma} must be finite and ≥ 0"),
            ));
        }
        Ok(CycleSpec { n, ma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ma(&self) -> T {
        self.ma
    }

    /// Lattice spacing in units of the radius, `a₀/a = 2π/N`.
    pub fn spacing_over_radius(&self) -> T {
        T::TAU() / T::of(self.n)
    }

    /// Lattice mass `μ a₀ = 2 sinh(π m a / N)`.
    pub fn mu_a0(&self) -> T {
        T::lit(2.0) * (T::PI() * self.ma / T::of(self.n)).sinh()
    }
}

/// Eigenvalues `a₀² λ̄_p` of `Δ^G + μ²` on C_N, indexed by `p = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSpectrum<T> {
    eigs: Vec<T>,
}

impl<T: Real> CycleSpectrum<T> {
    pub fn eigs(&self) -> &[T] {
        &self.eigs
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    pub fn min(&self) -> T {
        self.eigs.iter().copied().fold(T::infinity(), T::min)
    }
}

fn require_massive<T: Real>(op: &'static str, ma: T) -> Result<()> {
    if ma > T::zero() {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("ma = {ma}: the zero mode makes the free energy diverge"),
        ))
    }
}

/// `ln(2 sinh π ma)`, evaluated as `π ma + ln(1 - e^{-2π ma})`.
pub fn s1_free_energy<T: Real>(ma: T) -> Result<T> {
    require_massive("s1_free_energy", ma)?;
    let x = T::PI() * ma;
    Ok(x + (-(T::lit(-2.0) * x).exp()).ln_1p())
}

/// The same free energy from the winding-number series
/// `π ma - Σ_{l≥1} e^{-2π ma l} / l`.
pub fn s1_free_energy_series<T: Real>(ma: T, policy: &SeriesPolicy<T>) -> Result<EvalResult<T>> {
    require_massive("s1_free_energy_series", ma)?;
    let r = (T::lit(-2.0) * T::PI() * ma).exp();
    let sum = sum_with_tail(
        1,
        |l| r.powi(l as i32) / T::of(l),
        |_, t| t * r / (T::one() - r),
        policy,
    )?;
    Ok(sum.affine(-T::one(), T::PI() * ma))
}

/// Pauli–Villars regularized free energy `ln(sinh π ma / sinh π Ma)`.
pub fn s1_pauli_villars<T: Real>(ma: T, big_ma: T) -> Result<T> {
    if !(ma > T::zero() && big_ma > ma) {
        return Err(Error::domain(
            "s1_pauli_villars",
            format!("need 0 < ma < Ma, got ma = {ma}, Ma = {big_ma}"),
        ));
    }
    Ok(s1_free_energy(ma)? - s1_free_energy(big_ma)?)
}

/// Dense graph Laplacian of C_N (row-major `N × N`): 2 on the diagonal and
/// -1 for the two ring neighbours.
pub fn cycle_laplacian<T: Real>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::lit(2.0);
        m[i * n + (i + 1) % n] = m[i * n + (i + 1) % n] - T::one();
        m[i * n + (i + n - 1) % n] = m[i * n + (i + n - 1) % n] - T::one();
    }
    m
}

/// `a₀² λ̄_p = 4 sin²(πp/N) + 4 sinh²(π ma/N)` for `p = 0..N`.
pub fn cycle_eigenvalues<T: Real>(spec: &CycleSpec<T>) -> CycleSpectrum<T> {
    let nf = T::of(spec.n);
    let mass = T::lit(4.0) * (T::PI() * spec.ma / nf).sinh().powi(2);
    let eigs = (0..spec.n)
        .map(|p| T::lit(4.0) * (T::PI() * T::of(p) / nf).sin().powi(2) + mass)
        .collect();
    CycleSpectrum { eigs }
}

/// `½ Σ_p ln(a₀² λ̄_p)`: the unregularized finite-N log-determinant.
///
/// By the product identity `Π_p (2 cosh 2y - 2 cos θ_p) = 4 sinh²(N y)` this
/// equals `ln(2 sinh π ma)` for every N, with no regularization involved.
pub fn cycle_logdet_exact<T: Real>(spec: &CycleSpec<T>) -> Result<T> {
    require_massive("cycle_logdet_exact", spec.ma)?;
    let spectrum = cycle_eigenvalues(spec);
    Ok(spectrum.eigs.iter().map(|e| e.ln()).sum::<T>() / T::lit(2.0))
}

/// `∫₀^∞ dt/t I_ν(2t) e^{-2t cosh x} = e^{-νx}/ν` for `ν > 0`.
pub fn bessel_exp_integral<T: Real>(nu: T, x: T) -> Result<T> {
    if !(nu > T::zero()) {
        return Err(Error::domain(
            "bessel_exp_integral",
            format!("ν = {nu} ≤ 0"),
        ));
    }
    Ok((-nu * x).exp() / nu)
}

/// Convergent part `-N Σ_{q≥1} ∫ dt/t I_{Nq}(2t) e^{-2t cosh(2π ma/N)}`
/// of the Bessel-expanded free energy, which sums to `ln(1 - e^{-2π ma})`.
pub fn cycle_convergent_part<T: Real>(
    spec: &CycleSpec<T>,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    require_massive("cycle_free_energy_bessel", spec.ma)?;
    let nf = T::of(spec.n);
    let x = T::TAU() * spec.ma / nf;
    let r = (-T::TAU() * spec.ma).exp();
    let term = |q: usize| nf * bessel_exp_integral(nf * T::of(q), x).unwrap_or(T::nan());
    let sum = sum_with_tail(1, term, |_, t| t * r / (T::one() - r), policy)?;
    Ok(sum.affine(-T::one(), T::zero()))
}

/// Regularized free energy on C_N from the modified-Bessel expansion of the
/// heat trace.
///
/// The `q ≠ 0` winding terms are integrated in closed form. The `q = 0` term
/// is continued to order `ε` and its `1/ε` pole is dropped, leaving `π ma`.
pub fn cycle_free_energy_bessel<T: Real>(
    spec: &CycleSpec<T>,
    policy: &SeriesPolicy<T>,
) -> Result<EvalResult<T>> {
    let convergent = cycle_convergent_part(spec, policy)?;
    Ok(convergent.affine(T::one(), T::PI() * spec.ma))
}
