//! Regularized one-loop free energies of scalar fields computed from
//! heat-kernel traces.
//!
//! * [`circle`]: the circle S¹ and the cycle graph C_N, exactly.
//! * [`sphere`]: odd spheres S^d by series, zeta regularization and integral
//!   representations.
//! * [`deform`]: trigonometric deformation of the sphere traces at finite N.
//! * [`qdeform`]: the q-binomial degeneracy variant.
//! * [`specfun`]: special functions, series acceleration and quadrature.
//! * [`verify`]: the reproduction checks used by the CLI.
//!
//! The numerical core is generic over [`Real`] (`f32`/`f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what every documented
//! tolerance assumes.

pub mod circle;
pub mod deform;
mod error;
pub mod qdeform;
mod scalar;
pub mod specfun;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;
pub use specfun::{EvalResult, Method, SeriesPolicy};

/// Scalar coupling to the curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// ξ = (d-2)/(4(d-1)).
    Conformal,
    /// ξ = (d-1)/(4d); eigenvalues become perfect squares.
    PseudoConformal,
}

impl std::fmt::Display for Coupling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coupling::Conformal => "conformal",
            Coupling::PseudoConformal => "pc",
        })
    }
}

pub type EvalResult64 = EvalResult<f64>;
pub type SeriesPolicy64 = SeriesPolicy<f64>;
pub type CycleSpec64 = circle::CycleSpec<f64>;
pub type CycleSpectrum64 = circle::CycleSpectrum<f64>;
pub type SphereSpec64 = sphere::SphereSpec<f64>;
pub type SphereMode64 = sphere::SphereMode<f64>;
pub type VPolynomial64 = deform::VPolynomial<f64>;
