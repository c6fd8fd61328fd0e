//! Operational-calculus engine.
//!
//! `fresnel_symbol` evaluates the half-line oscillatory integral
//! `C(a, b) = ∫₀^∞ exp(i t^a) t^b dt` through its closed form
//! `(1/a) Γ((1+b)/a) exp(iπ(1+b)/(2a))`, valid for `a > 1`, `b > -1`.
//!
//! `transform_series` applies the same symbol under an entire function:
//! for `f(x) = Σ aₙ xⁿ` of exponential type it sums `Σ aₙ C(a, n) xⁿ`,
//! which is the power-series realization of `∫₀^∞ exp(i t^a) f(x t) dt`
//! obtained by letting monomials act as eigenfunctions of the dilatation
//! operator `x d/dx`. Coefficient providers outside that entire class are
//! not rejected up front; the truncation policy's term cap reports the
//! failure through `converged = false`.

use std::cell::Cell;

use crate::numerics::{
    compensated_sum_with_reason, gamma_real, Complex64, Error, EvalResult, Result, StopReason,
    TruncationPolicy,
};

/// Validated parameter pair for the oscillatory symbol `C(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelSymbol {
    alpha: f64,
    beta: f64,
}

impl FresnelSymbol {
    /// Requires `alpha > 1` and `beta > -1`; outside that wedge the integral
    /// does not converge.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::Domain("symbol exponent alpha must exceed 1"));
        }
        if !beta.is_finite() || beta <= -1.0 {
            return Err(Error::Domain("symbol power beta must exceed -1"));
        }
        Ok(FresnelSymbol { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Closed form of `∫₀^∞ exp(i t^alpha) t^beta dt`.
///
/// The modulus is `Γ((1+beta)/alpha) / alpha` and the argument is
/// `π (1+beta) / (2 alpha)`. When the phase lands exactly on the imaginary
/// axis (`(1+beta)/alpha == 1`) the real part is returned as an exact zero.
pub fn fresnel_symbol(sym: FresnelSymbol) -> Result<Complex64> {
    let q = (1.0 + sym.beta) / sym.alpha;
    let modulus = gamma_real(q)? / sym.alpha;
    if q == 1.0 {
        return Ok(Complex64::new(0.0, modulus));
    }
    let angle = std::f64::consts::FRAC_PI_2 * q;
    Ok(Complex64::new(
        modulus * angle.cos(),
        modulus * angle.sin(),
    ))
}

/// Maps a series index `n >= 0` to the coefficient `aₙ` of an entire
/// function `f(x) = Σ aₙ xⁿ`.
///
/// Providers must be stateless (or synchronize internally if they memoize):
/// evaluators may query them from several threads.
pub trait CoefficientSeries {
    fn coefficient(&self, n: usize) -> Complex64;
}

impl<F: Fn(usize) -> Complex64> CoefficientSeries for F {
    fn coefficient(&self, n: usize) -> Complex64 {
        self(n)
    }
}

/// Coefficients of `exp(c x)`: `aₙ = cⁿ/n!`, built by the stable recurrence
/// `aₙ = aₙ₋₁ · c / n` so no factorial is formed explicitly.
#[derive(Debug, Clone, Copy)]
pub struct ExpCoefficients {
    scale: Complex64,
}

impl ExpCoefficients {
    pub fn new(scale: Complex64) -> Self {
        ExpCoefficients { scale }
    }
}

impl CoefficientSeries for ExpCoefficients {
    fn coefficient(&self, n: usize) -> Complex64 {
        let mut a = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            a = a * self.scale / (k as f64);
        }
        a
    }
}

/// Sums `Σ aₙ C(alpha, n) xⁿ` under `policy`.
///
/// The n-th addend is assembled incrementally: `xⁿ` by repeated
/// multiplication, `C(alpha, n)` by a fresh Gamma evaluation per term. If the
/// Gamma factor overflows before the stopping rule fires (possible for alpha
/// close to 1 with a large term cap), the stream is cut there and the result
/// is flagged non-converged rather than poisoned with infinities.
pub fn transform_series<C>(
    coeffs: &C,
    alpha: f64,
    x: Complex64,
    policy: &TruncationPolicy,
) -> Result<EvalResult>
where
    C: CoefficientSeries + ?Sized,
{
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::Domain("transform exponent alpha must exceed 1"));
    }
    let cut = Cell::new(false);
    let mut xpow = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    let stream = std::iter::from_fn(|| {
        let symbol = match fresnel_symbol(FresnelSymbol::new(alpha, n as f64).ok()?) {
            Ok(c) => c,
            Err(_) => {
                cut.set(true);
                return None;
            }
        };
        let term = coeffs.coefficient(n) * symbol * xpow;
        if !(term.re.is_finite() && term.im.is_finite()) {
            cut.set(true);
            return None;
        }
        xpow *= x;
        n += 1;
        Some(term)
    });
    let (mut result, reason) = compensated_sum_with_reason(stream, policy);
    if cut.get() && reason == StopReason::Exhausted {
        result.converged = false;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI_OVER_8: f64 = 0.62665706865775012560394132120; // sqrt(pi/8)

    #[test]
    fn symbol_validation_rejects_bad_parameters() {
        assert!(FresnelSymbol::new(1.0, 0.0).is_err());
        assert!(FresnelSymbol::new(0.5, 0.0).is_err());
        assert!(FresnelSymbol::new(f64::NAN, 0.0).is_err());
        assert!(FresnelSymbol::new(f64::INFINITY, 0.0).is_err());
        assert!(FresnelSymbol::new(2.0, -1.0).is_err());
        assert!(FresnelSymbol::new(2.0, -2.5).is_err());
        assert!(FresnelSymbol::new(2.0, f64::NAN).is_err());
        assert!(FresnelSymbol::new(1.5, -0.5).is_ok());
    }

    #[test]
    fn symbol_quadratic_case_is_fresnel_pair() {
        // C(2, 0) = sqrt(pi/8) (1 + i).
        let c = fresnel_symbol(FresnelSymbol::new(2.0, 0.0).unwrap()).unwrap();
        assert!((c.re - SQRT_PI_OVER_8).abs() < 1e-12);
        assert!((c.im - SQRT_PI_OVER_8).abs() < 1e-12);
    }

    #[test]
    fn symbol_on_imaginary_axis_is_exact() {
        // beta = alpha - 1 puts the phase at pi/2 and the Gamma factor at 1,
        // so C(alpha, alpha - 1) = i / alpha with no rounding at all.
        for alpha in [1.7, 2.0, 3.0, 4.0, 5.5] {
            let c = fresnel_symbol(FresnelSymbol::new(alpha, alpha - 1.0).unwrap()).unwrap();
            assert_eq!(c.re, 0.0, "alpha = {alpha}");
            assert_eq!(c.im, 1.0 / alpha, "alpha = {alpha}");
        }
    }

    #[test]
    fn symbol_quartic_value() {
        // C(4, 0) = (Gamma(1/4)/4) exp(i pi/8); digits from the Gamma
        // reference value times the exact cos/sin of pi/8.
        let c = fresnel_symbol(FresnelSymbol::new(4.0, 0.0).unwrap()).unwrap();
        assert!((c.re - 0.83740669676908648308).abs() < 1e-13);
        assert!((c.im - 0.34686521102380949604).abs() < 1e-13);
    }

    #[test]
    fn symbol_modulus_and_argument_across_grid() {
        for alpha in [1.5, 2.0, 3.0, 4.0, 5.0] {
            for beta in [0.0, 0.5, 1.0, 2.0] {
                let c = fresnel_symbol(FresnelSymbol::new(alpha, beta).unwrap()).unwrap();
                let modulus = gamma_real((1.0 + beta) / alpha).unwrap() / alpha;
                let arg = std::f64::consts::PI * (1.0 + beta) / (2.0 * alpha);
                assert!(
                    (c.norm() - modulus).abs() < 1e-13 * modulus,
                    "modulus at ({alpha}, {beta})"
                );
                assert!(
                    (c.arg() - arg).abs() < 1e-13,
                    "argument at ({alpha}, {beta})"
                );
            }
        }
    }

    #[test]
    fn exp_coefficients_match_closed_form() {
        let zero = ExpCoefficients::new(Complex64::new(0.0, 0.0));
        assert_eq!(zero.coefficient(0), Complex64::new(1.0, 0.0));
        for n in 1..6 {
            assert_eq!(zero.coefficient(n), Complex64::new(0.0, 0.0));
        }

        let unit_i = ExpCoefficients::new(Complex64::new(0.0, 1.0));
        let a2 = unit_i.coefficient(2);
        assert!((a2.re + 0.5).abs() < 1e-16);
        assert_eq!(a2.im, 0.0);

        let two_i = ExpCoefficients::new(Complex64::new(0.0, 2.0));
        let a3 = two_i.coefficient(3);
        assert_eq!(a3.re, 0.0);
        assert!((a3.im + 4.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn transform_of_constant_function() {
        // f = exp(0 * x) has coefficients {1, 0, 0, ...}, so the transform
        // collapses to C(alpha, 0).
        let policy = TruncationPolicy::default();
        let coeffs = ExpCoefficients::new(Complex64::new(0.0, 0.0));
        let r = transform_series(&coeffs, 3.0, Complex64::new(0.7, 0.0), &policy).unwrap();
        let c0 = fresnel_symbol(FresnelSymbol::new(3.0, 0.0).unwrap()).unwrap();
        assert_eq!(r.value, c0);
        assert!(r.converged);
        assert_eq!(r.terms_used, 1 + policy.small_streak);
    }

    #[test]
    fn transform_at_zero_keeps_only_first_coefficient() {
        let policy = TruncationPolicy::default();
        let coeffs = ExpCoefficients::new(Complex64::new(0.3, -0.2));
        let r = transform_series(&coeffs, 2.5, Complex64::new(0.0, 0.0), &policy).unwrap();
        let c0 = fresnel_symbol(FresnelSymbol::new(2.5, 0.0).unwrap()).unwrap();
        assert_eq!(r.value, c0);
        assert!(r.converged);
    }

    #[test]
    fn transform_rejects_alpha_at_most_one() {
        let policy = TruncationPolicy::default();
        let coeffs = ExpCoefficients::new(Complex64::new(0.0, 1.0));
        let r = transform_series(&coeffs, 1.0, Complex64::new(0.5, 0.0), &policy);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn transform_flags_divergent_coefficients() {
        // n! coefficients violate the entire-type requirement; the cap at
        // max_terms must report non-convergence instead of a value.
        let policy = TruncationPolicy::new(1e-14, 3, 60).unwrap();
        let factorial = |n: usize| {
            let mut a = 1.0f64;
            for k in 1..=n {
                a *= k as f64;
            }
            Complex64::new(a, 0.0)
        };
        let r = transform_series(&factorial, 2.0, Complex64::new(1.0, 0.0), &policy).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 60);
    }

    #[test]
    fn transform_survives_gamma_overflow_cut() {
        // With alpha barely above 1 the Gamma factor overflows near n = 180;
        // the stream must be cut and flagged rather than returning infinity.
        let policy = TruncationPolicy::new(1e-14, 3, 500).unwrap();
        let coeffs = ExpCoefficients::new(Complex64::new(4.0, 0.0));
        let r = transform_series(&coeffs, 1.01, Complex64::new(1.0, 0.0), &policy).unwrap();
        assert!(!r.converged);
        assert!(r.value.re.is_finite() && r.value.im.is_finite());
        assert!(r.terms_used < 500);
    }
}
