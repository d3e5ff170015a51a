//! The q-binomial variant of the deformed degeneracies at the root of unity
//! `q = e^{2πi/N}`, where the symmetric q-number is `[p] = sin(πp/N)/sin(π/N)`.

use crate::deform::{deformed_degeneracy, DeformSpec};
use crate::error::{Error, Result};
use crate::specfun::{dirichlet_eta, riemann_zeta, EvalResult};
use crate::{Coupling, Real};

/// Root-of-unity order `N ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QNumberCtx {
    n: u32,
}

impl QNumberCtx {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation("QNumberCtx", format!("N = {n} < 3")));
        }
        Ok(QNumberCtx { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// `[p] = sin(πp/N) / sin(π/N)`, `0 ≤ p ≤ N`.
pub fn q_number<T: Real>(ctx: &QNumberCtx, p: u32) -> Result<T> {
    if p > ctx.n {
        return Err(Error::domain(
            "q_number",
            format!("p = {p} > N = {}", ctx.n),
        ));
    }
    // [N − p] = [p] exactly
    let p = p.min(ctx.n - p);
    let nf = T::of(ctx.n as usize);
    Ok((T::PI() * T::of(p as usize) / nf).sin() / (T::PI() / nf).sin())
}

/// `[n]! = [n][n−1]⋯[1]`, `n < N` so that no factor vanishes.
pub fn q_factorial<T: Real>(ctx: &QNumberCtx, n: u32) -> Result<T> {
    if n >= ctx.n {
        return Err(Error::domain(
            "q_factorial",
            format!("[{n}]! contains [N] = 0 at N = {}", ctx.n),
        ));
    }
    (1..=n).try_fold(T::one(), |acc, k| Ok(acc * q_number::<T>(ctx, k)?))
}

/// Gaussian binomial `[a; b] = [a]! / ([b]! [a−b]!)`, zero for `b > a`.
pub fn q_binomial<T: Real>(ctx: &QNumberCtx, a: u32, b: u32) -> Result<T> {
    if b > a {
        return Ok(T::zero());
    }
    Ok(q_factorial::<T>(ctx, a)? / (q_factorial::<T>(ctx, b)? * q_factorial::<T>(ctx, a - b)?))
}

/// `[d+p; d] − [d+p−2; d]`, the q-binomial analogue of the continuum degeneracy.
///
/// Requires `d + p < N`.
pub fn q_binomial_difference<T: Real>(ctx: &QNumberCtx, d: u32, p: u32) -> Result<T> {
    let first = q_binomial::<T>(ctx, d + p, d)?;
    let second = if p >= 2 {
        q_binomial::<T>(ctx, d + p - 2, d)?
    } else {
        T::zero()
    };
    Ok(first - second)
}

/// `ĝ_p = cos(π(p+v)/N) / cos(πv/N) · ḡ_p` with `ḡ_p` the trigonometric
/// degeneracy. For `p ≤ N−1−d` the q-binomial difference is evaluated too and
/// must agree to 1e-10 relative.
pub fn q_binomial_degeneracy<T: Real>(ctx: &QNumberCtx, d: u32, p: u32) -> Result<T> {
    let spec = DeformSpec::new(d, ctx.n, Coupling::Conformal)?;
    let v = spec.v();
    let nf = T::of(ctx.n as usize);
    let ratio =
        (T::PI() * T::of((p + v) as usize) / nf).cos() / (T::PI() * T::of(v as usize) / nf).cos();
    let g = ratio * deformed_degeneracy::<T>(&spec, p)?;
    if p + d < ctx.n {
        let alt = q_binomial_difference::<T>(ctx, d, p)?;
        if (alt - g).abs() > T::lit(1e-10) * T::one().max(g.abs()) {
            return Err(Error::validation(
                "q_binomial_degeneracy",
                format!("q-binomial form {alt} and cosine form {g} disagree at d = {d}, N = {}, p = {p}", ctx.n),
            ));
        }
    }
    Ok(g)
}

/// S³ free energy with the degeneracy `|ĝ_p|`, through order `π²/N²`:
///
/// conformal: `ln2/8 − η(3)/4π² + (π²/N²)(5 ln2/64 − 13η(3)/48π² − 5η(5)/8π⁴)`,
/// pseudo-conformal: `ζ(3)/4π² + (π²/N²)(5ζ(3)/24π² + 5ζ(5)/8π⁴)`.
pub fn q_free_energy_order2<T: Real>(d: u32, n: u32, coupling: Coupling) -> Result<EvalResult<T>> {
    if d != 3 {
        return Err(Error::domain(
            "q_free_energy_order2",
            format!("only d = 3 is available, got {d}"),
        ));
    }
    if n < 8 {
        return Err(Error::validation(
            "q_free_energy_order2",
            format!("N = {n} < 8"),
        ));
    }
    let [lead, slope] = q_expansion_coefficients::<T>(coupling)?;
    let x = (T::PI() / T::of(n as usize)).powi(2);
    Ok(EvalResult::closed_form(lead + slope * x))
}

/// `[F₀, F₂]` with `F̂₃ = F₀ + F₂ π²/N² + O(N⁻⁴)`.
pub fn q_expansion_coefficients<T: Real>(coupling: Coupling) -> Result<[T; 2]> {
    let pi2 = T::PI() * T::PI();
    let pi4 = pi2 * pi2;
    let f = |x: f64| T::lit(x);
    Ok(match coupling {
        Coupling::Conformal => {
            let (e3, e5) = (dirichlet_eta(f(3.0))?, dirichlet_eta(f(5.0))?);
            [
                T::LN_2() / f(8.0) - e3 / (f(4.0) * pi2),
                f(5.0) * T::LN_2() / f(64.0)
                    - f(13.0) * e3 / (f(48.0) * pi2)
                    - f(5.0) * e5 / (f(8.0) * pi4),
            ]
        }
        Coupling::PseudoConformal => {
            let (z3, z5) = (riemann_zeta(f(3.0))?, riemann_zeta(f(5.0))?);
            [
                z3 / (f(4.0) * pi2),
                f(5.0) * z3 / (f(24.0) * pi2) + f(5.0) * z5 / (f(8.0) * pi4),
            ]
        }
    })
}
