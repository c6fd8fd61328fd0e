//! Shared numeric kernels: the real Gamma function, compensated series
//! accumulation with a uniform truncation policy, and exact phase tables for
//! angles that are multiples of pi/8 and pi/6.

use std::fmt;

pub use num_complex::Complex64;

/// Errors reported by evaluators in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An argument lies outside the function's domain. The message names the
    /// violated constraint.
    Domain(&'static str),
    /// A value exceeded the representable double range.
    Overflow(&'static str),
    /// Adaptive quadrature hit its subdivision cap before reaching the
    /// requested tolerance. Carries the best value, its error estimate and
    /// the number of panels consumed.
    QuadratureStalled {
        value: Complex64,
        abs_err_est: f64,
        requested: f64,
        panels: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::QuadratureStalled {
                abs_err_est,
                requested,
                ..
            } => write!(
                f,
                "quadrature stalled at error estimate {abs_err_est:.3e} (requested {requested:.3e})"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Stopping rule shared by every series evaluator.
///
/// Accumulation stops once `small_streak` consecutive terms satisfy
/// `|term| < rel_tol * |partial sum|` (an exactly-zero term always counts),
/// or when `max_terms` terms have been consumed, whichever comes first.
/// Streams that may open with `small_streak` exact zeros before their first
/// nonzero term need a larger streak; no series in this crate produces more
/// than two consecutive zero terms ahead of a nonzero one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub small_streak: usize,
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, small_streak: usize, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain("rel_tol must lie in (0, 1)"));
        }
        if small_streak == 0 {
            return Err(Error::Domain("small_streak must be at least 1"));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1"));
        }
        Ok(TruncationPolicy {
            rel_tol,
            small_streak,
            max_terms,
        })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            rel_tol: 1e-14,
            small_streak: 3,
            max_terms: 500,
        }
    }
}

/// Outcome of a truncated series evaluation.
///
/// `abs_err_est` is the magnitude of the sum of the trailing `small_streak`
/// terms, a faithful proxy when terms decay factorially. `converged` is false
/// exactly when the term cap was reached before the small-term streak fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err_est: f64,
    pub terms_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum StopReason {
    SmallStreak,
    TermCap,
    Exhausted,
}

/// Sums a stream of complex terms under `policy` with Neumaier compensation
/// applied independently to the real and imaginary components.
pub fn compensated_sum<I>(terms: I, policy: &TruncationPolicy) -> EvalResult
where
    I: IntoIterator<Item = Complex64>,
{
    compensated_sum_with_reason(terms, policy).0
}

pub(crate) fn compensated_sum_with_reason<I>(
    terms: I,
    policy: &TruncationPolicy,
) -> (EvalResult, StopReason)
where
    I: IntoIterator<Item = Complex64>,
{
    let mut sum_re = 0.0f64;
    let mut comp_re = 0.0f64;
    let mut sum_im = 0.0f64;
    let mut comp_im = 0.0f64;
    let mut tail: Vec<Complex64> = Vec::with_capacity(policy.small_streak);
    let mut streak = 0usize;
    let mut terms_used = 0usize;
    let mut reason = StopReason::Exhausted;

    for term in terms {
        if terms_used == policy.max_terms {
            reason = StopReason::TermCap;
            break;
        }
        neumaier_add(&mut sum_re, &mut comp_re, term.re);
        neumaier_add(&mut sum_im, &mut comp_im, term.im);
        terms_used += 1;

        if tail.len() == policy.small_streak {
            tail.remove(0);
        }
        tail.push(term);

        let partial = f64::hypot(sum_re + comp_re, sum_im + comp_im);
        // An exactly-zero term is negligible against any sum, including the
        // zero sum: identically-vanishing series (the twice-differentiated
        // Airy series at x = 0) must converge, not exhaust the cap.
        let magnitude = term.norm();
        if magnitude == 0.0 || magnitude < policy.rel_tol * partial {
            streak += 1;
            if streak >= policy.small_streak {
                reason = StopReason::SmallStreak;
                break;
            }
        } else {
            streak = 0;
        }
    }

    let value = Complex64::new(sum_re + comp_re, sum_im + comp_im);
    let trailing: Complex64 = tail.iter().sum();
    (
        EvalResult {
            value,
            abs_err_est: trailing.norm(),
            terms_used,
            converged: reason != StopReason::TermCap,
        },
        reason,
    )
}

/// One Neumaier update: adds `v` into the running `sum`, tracking the rounding
/// error of each addition in `comp`.
#[inline]
fn neumaier_add(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

// Gamma(n) for integer n in [1, 23]: factorials 0! .. 22!, all exactly
// representable in an f64 (their odd parts stay below 2^53).
const FACTORIALS: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
];

// Lanczos approximation with g = 607/128, rated near machine precision for
// double arithmetic across the positive axis.
const LANCZOS_C0: f64 = 0.99999999999999709182;
const LANCZOS: [f64; 14] = [
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];
const LANCZOS_SHIFT: f64 = 5.2421875; // g + 1/2
const SQRT_2PI: f64 = 2.5066282746310005024157652848110452530069867406099383;

fn lanczos_series(x: f64) -> f64 {
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    ser
}

/// Real Gamma function for x > 0.
///
/// Integer arguments up to 23 come from an exact factorial table; arguments
/// below 1/2 go through the reflection formula; the rest use the Lanczos
/// kernel with the power split in two so intermediates stay in range. The
/// relative error stays at the 1e-15 level through x = 170.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("gamma argument must be finite"));
    }
    if x <= 0.0 {
        return Err(Error::Domain("gamma argument must be positive"));
    }
    if x == x.trunc() && x <= 23.0 {
        return Ok(FACTORIALS[x as usize - 1]);
    }
    if x < 0.5 {
        // Gamma(x) = pi / (sin(pi x) Gamma(1 - x)); 1 - x lies in (0.5, 1).
        let g = gamma_direct(1.0 - x);
        let r = std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * g);
        if !r.is_finite() {
            return Err(Error::Overflow("gamma overflow near zero"));
        }
        return Ok(r);
    }
    let r = gamma_direct(x);
    if !r.is_finite() {
        return Err(Error::Overflow("gamma overflow for large argument"));
    }
    Ok(r)
}

fn gamma_direct(x: f64) -> f64 {
    let t = x + LANCZOS_SHIFT;
    let p = t.powf((x + 0.5) / 2.0);
    let ser = lanczos_series(x);
    (SQRT_2PI * ser / x) * (p * (-t).exp()) * p
}

/// Natural log of Gamma for x > 0, for magnitude bookkeeping where Gamma
/// itself would overflow.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let t = x + LANCZOS_SHIFT;
    (x + 0.5) * t.ln() - t + (SQRT_2PI * lanczos_series(x) / x).ln()
}

// cos(pi/8) and cos(3pi/8); sqrt(3)/2. Written to more digits than an f64
// holds so the literals round to the correctly rounded values.
const COS_PI_8: f64 = 0.92387953251128675612818318939678828682;
const COS_3PI_8: f64 = 0.38268343236508977172845998403039886676;
pub(crate) const SQRT3_OVER_2: f64 = 0.86602540378443864676372317075293618347;
pub(crate) const CBRT3: f64 = 1.44224957030740838232163831078010958839; // 3^(1/3)
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

// cos(k pi/8) for k = 0..15. Entries at k = 4 and k = 12 are exact zeros so
// that series terms whose phase lands on the imaginary axis vanish exactly.
const COS8: [f64; 16] = [
    1.0,
    COS_PI_8,
    FRAC_1_SQRT_2,
    COS_3PI_8,
    0.0,
    -COS_3PI_8,
    -FRAC_1_SQRT_2,
    -COS_PI_8,
    -1.0,
    -COS_PI_8,
    -FRAC_1_SQRT_2,
    -COS_3PI_8,
    0.0,
    COS_3PI_8,
    FRAC_1_SQRT_2,
    COS_PI_8,
];

/// cos(k pi/8) from the exact table.
#[inline]
pub(crate) fn cos_eighth(k: usize) -> f64 {
    COS8[k % 16]
}

/// sin(k pi/8) from the exact table: sin t = cos(t - pi/2).
#[inline]
pub(crate) fn sin_eighth(k: usize) -> f64 {
    COS8[(k + 12) % 16]
}

/// exp(i k pi/8) with exact axis values.
#[inline]
pub(crate) fn phase_eighth(k: usize) -> Complex64 {
    Complex64::new(cos_eighth(k), sin_eighth(k))
}
