//! Double-precision special functions, series acceleration and quadrature.
//!
//! Everything here is a pure function of its arguments. Tolerances are passed
//! in through [`SeriesPolicy`] or explicit `tol` arguments; there is no global
//! state.

mod bessel;
mod gamma;
mod quad;
mod series;
mod zeta;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_k_half};
pub use gamma::{digamma, gamma_abs_sq, gamma_real, ln_gamma};
pub use quad::{integrate, integrate_semiinf};
pub(crate) use series::geometric_tail;
pub use series::{alternating_sum, sum_with_tail};
pub use zeta::{alt_sum_closed, dirichlet_eta, riemann_zeta};

use serde::Serialize;

use crate::Real;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Quadrature,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// A computed value together with how it was obtained and an a-posteriori
/// bound on the truncation or quadrature remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub method: Method,
    /// Series terms summed, or integrand evaluations for quadrature.
    pub terms_or_nodes: usize,
    pub err_estimate: T,
}

impl<T: Real> EvalResult<T> {
    pub fn closed_form(value: T) -> Self {
        EvalResult {
            value,
            method: Method::ClosedForm,
            terms_or_nodes: 0,
            err_estimate: T::zero(),
        }
    }

    /// Applies an affine map `scale * value + shift`, scaling the error bound.
    pub fn affine(self, scale: T, shift: T) -> Self {
        EvalResult {
            value: scale * self.value + shift,
            err_estimate: scale.abs() * self.err_estimate,
            ..self
        }
    }
}

/// Stopping rule for infinite series.
///
/// A series stops once the current term is below `abs_tol` and a declared
/// bound on the remaining tail is below `abs_tol`. Needing more than
/// `max_terms` terms is reported as non-convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy<T> {
    pub abs_tol: T,
    pub max_terms: usize,
}

impl<T: Real> Default for SeriesPolicy<T> {
    fn default() -> Self {
        SeriesPolicy {
            abs_tol: T::lit(1e-13),
            max_terms: 1_000_000,
        }
    }
}

impl<T: Real> SeriesPolicy<T> {
    pub fn with_tol(abs_tol: T) -> Self {
        SeriesPolicy {
            abs_tol,
            ..Self::default()
        }
    }
}
