//! Series evaluators for the Airy function and its quartic-phase analogue.
//!
//! Both come from the same operational pipeline as `opcalc::transform_series`:
//! expanding the plane-wave amplitude of the defining integral and applying
//! the symbol `C(alpha, n)` term by term. For `Ai` the phases collapse to the
//! real cosine table `cos((4n+1)π/6)`, giving
//!
//! `Ai(x) = (1/(3^{2/3}π)) Σₙ [Γ((n+1)/3)/n!] cos((4n+1)π/6) (3^{1/3}x)ⁿ`,
//!
//! and derivatives of order k shift the coefficient stream by k. The quartic
//! analogue `Ai₄(x) = ∫₀^∞ cos(t⁴ + 2xt + 2x²) dt` expands the same way with
//! eighth-turn phases:
//!
//! `Ai₄(x) = (1/4) Σₙ [Γ((n+1)/4)/n!] cos(2x² + (5n+1)π/8) (2x)ⁿ`.
//!
//! A widely circulated printing of that expansion repeats the factor
//! `cos((5n+1)π/8)` where the addition formula requires `sin((5n+1)π/8)` in
//! the `sin(2x²)` slot; [`Airy4Variant`] keeps both forms so the quadrature
//! oracle can arbitrate. The two coincide identically at `x = 0`.

use crate::numerics::{
    compensated_sum_with_reason, cos_eighth, gamma_real, sin_eighth, Complex64, Error, EvalResult,
    Result, StopReason, TruncationPolicy, CBRT3, SQRT3_OVER_2,
};
use std::cell::Cell;

/// `1/(3^{2/3} π)`, the front factor of the Airy series.
const K3: f64 = 1.0 / (CBRT3 * CBRT3 * std::f64::consts::PI);

/// Argument of `Ai` or `Ai₄`. The series are entire but alternating with
/// factorial-damped cancellation, so beyond the practical domains the f64
/// evaluation loses more accuracy than the error estimate admits; construction
/// enforces the wider `Ai` bound and `airy4` additionally enforces its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryEvalPoint {
    x: f64,
}

impl AiryEvalPoint {
    /// Practical domain bound for `airy_ai` and `airy_ai_deriv`.
    pub const AI_X_MAX: f64 = 8.0;
    /// Practical domain bound for `airy4`.
    pub const AI4_X_MAX: f64 = 4.0;

    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || x.abs() > Self::AI_X_MAX {
            return Err(Error::Domain("airy argument must satisfy |x| <= 8"));
        }
        Ok(AiryEvalPoint { x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// `cos((4j+1)π/6)` for integer `j`: the values cycle through
/// `{+√3/2, −√3/2, 0}` with period 3, and the zero at `j ≡ 2 (mod 3)` is
/// exact so those series terms vanish bitwise.
fn cos_sixth(j: usize) -> f64 {
    match j % 3 {
        0 => SQRT3_OVER_2,
        1 => -SQRT3_OVER_2,
        _ => 0.0,
    }
}

/// Term `n` of the order-`k` differentiated Airy series, by the direct
/// formula. The streaming evaluator builds the same numbers incrementally;
/// this form exists for per-term assertions and route comparisons.
#[cfg(test)]
pub(crate) fn ai_term(n: usize, k: usize, x: f64) -> Result<f64> {
    let g = gamma_real((n + k + 1) as f64 / 3.0)?;
    let zx = CBRT3 * x;
    let mut monomial = 1.0;
    let mut fact = 1.0;
    for j in 0..n {
        monomial *= zx;
        fact *= (j + 1) as f64;
    }
    Ok(K3 * CBRT3.powi(k as i32) * g * (monomial / fact) * cos_sixth(n + k))
}

/// Shared evaluator: order-`k` term-wise derivative of the Airy series
/// (`k = 0` is `Ai` itself). Differentiating shifts the coefficient stream,
/// so term `n` carries `Γ((n+k+1)/3) cos((4(n+k)+1)π/6)`.
fn ai_series(x: f64, k: usize, policy: &TruncationPolicy) -> Result<EvalResult> {
    let zx = CBRT3 * x;
    let scale = K3 * CBRT3.powi(k as i32);
    // Set when the gamma factor leaves representable range before the policy
    // stops the stream; the sum is then reported as non-converged.
    let cut = Cell::new(false);
    let mut n = 0usize;
    let mut weight = 1.0f64; // (3^{1/3}x)^n / n!, updated incrementally
    let terms = std::iter::from_fn(|| {
        let g = match gamma_real((n + k + 1) as f64 / 3.0) {
            Ok(g) => g,
            Err(_) => {
                cut.set(true);
                return None;
            }
        };
        // cos_sixth is exactly 0.0 every third term; the grouping keeps the
        // product an exact zero there.
        let term = scale * g * weight * cos_sixth(n + k);
        weight *= zx / (n + 1) as f64;
        n += 1;
        Some(Complex64::new(term, 0.0))
    });
    let (mut result, reason) = compensated_sum_with_reason(terms, policy);
    if cut.get() && reason == StopReason::Exhausted {
        result.converged = false;
    }
    Ok(result)
}

/// Airy function `Ai(x)` by its operational power series. Real-valued: the
/// imaginary component of the result is identically zero.
pub fn airy_ai(point: AiryEvalPoint, policy: &TruncationPolicy) -> Result<EvalResult> {
    ai_series(point.x(), 0, policy)
}

/// Derivative of `Ai` of order 1 or 2, by term-wise differentiation of the
/// same series (index shift of the coefficient stream).
pub fn airy_ai_deriv(
    point: AiryEvalPoint,
    order: usize,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    if !(1..=2).contains(&order) {
        return Err(Error::Domain("derivative order must be 1 or 2"));
    }
    ai_series(point.x(), order, policy)
}

/// Which reading of the quartic-phase expansion to evaluate. `Verbatim`
/// repeats `cos((5n+1)π/8)` in both the `cos(2x²)` and `sin(2x²)` slots, as
/// one printed form has it; `Corrected` uses the angle-addition form
/// `cos(2x² + (5n+1)π/8)`, which re-derivation of the operational pipeline
/// yields and the quadrature oracle confirms. They coincide bitwise at
/// `x = 0` where `sin(2x²) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Airy4Variant {
    Verbatim,
    #[default]
    Corrected,
}

/// Quartic-phase analogue `Ai₄(x) = ∫₀^∞ cos(t⁴ + 2xt + 2x²) dt` by series.
/// Real-valued; practical domain `|x| <= 4`.
pub fn airy4(
    point: AiryEvalPoint,
    variant: Airy4Variant,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    let x = point.x();
    if x.abs() > AiryEvalPoint::AI4_X_MAX {
        return Err(Error::Domain("airy4 argument must satisfy |x| <= 4"));
    }
    let (s2, c2) = (2.0 * x * x).sin_cos();
    let tx = 2.0 * x;
    let cut = Cell::new(false);
    let mut n = 0usize;
    let mut weight = 1.0f64; // (2x)^n / n!
    let terms = std::iter::from_fn(|| {
        let g = match gamma_real((n + 1) as f64 / 4.0) {
            Ok(g) => g,
            Err(_) => {
                cut.set(true);
                return None;
            }
        };
        let ct = cos_eighth(5 * n + 1);
        let angular = match variant {
            Airy4Variant::Corrected => c2 * ct - s2 * sin_eighth(5 * n + 1),
            Airy4Variant::Verbatim => c2 * ct - s2 * ct,
        };
        let term = 0.25 * g * weight * angular;
        weight *= tx / (n + 1) as f64;
        n += 1;
        Some(Complex64::new(term, 0.0))
    });
    let (mut result, reason) = compensated_sum_with_reason(terms, policy);
    if cut.get() && reason == StopReason::Exhausted {
        result.converged = false;
    }
    Ok(result)
}
