//! Series and quadrature evaluation of oscillatory integrals of the
//! generalized Airy family.
//!
//! The central object is the half-line integral
//!
//! ```text
//! C(a, b) = ∫₀^∞ exp(i t^a) t^b dt        (a > 1, b > -1)
//! ```
//!
//! which has the closed form `(1/a) Γ((1+b)/a) exp(iπ(1+b)/(2a))`. Treating
//! the monomial index as the eigenvalue of the dilatation operator `x d/dx`
//! turns integrals of the shape `∫₀^∞ exp(i t^a) f(x t) dt` into power series
//! whose n-th coefficient is `aₙ C(a, n)`, where `f(x) = Σ aₙ xⁿ` is entire.
//! That engine is in [`opcalc`]; [`airy`] and [`pearcey`] apply it to the Airy
//! function, a fourth-order Airy analogue, and the half-line Pearcey integral.
//! [`oracle`] evaluates the same integrals by adaptive quadrature on a rotated
//! ray, independently of the series route, so each family can be checked by
//! two methods that share no code.
//!
//! All series go through the truncation policy and compensated accumulator in
//! [`numerics`]; results carry the value, an error estimate, the number of
//! terms consumed and a convergence flag.

pub mod airy;
pub mod numerics;
pub mod opcalc;
pub mod oracle;
pub mod pearcey;

pub use numerics::{compensated_sum, gamma_real, Complex64, Error, EvalResult, TruncationPolicy};
