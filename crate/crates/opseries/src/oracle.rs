//! Quadrature reference route, independent of every series evaluator.
//!
//! Integrals of the form `∫₀^∞ exp(i t^a) g(t) dt` are pushed onto the ray
//! `t = exp(iθ) s` with `0 < θ <= π/(2a)`. On that ray the oscillatory kernel
//! becomes `exp(-sin(aθ) s^a) exp(i cos(aθ) s^a)`, which decays once `s^a`
//! outruns the amplitude's growth, so an ordinary adaptive rule applies. At
//! the default `θ = π/(2a)` the damping is pure `exp(-s^a)`. Rotating the
//! contour is legitimate because the amplitudes used here are entire with at
//! most `exp(c₁ s + c₂ s²)` growth against damping of order `a > 2` (or
//! polynomial growth for `a > 1`), so the connecting arc vanishes in the
//! limit; the rotation-invariance tests exercise exactly that.
//!
//! Panels are bisected adaptively, worst first, with the embedded
//! Gauss(7)/Kronrod(15) pair supplying per-panel error estimates.

use crate::numerics::{Complex64, Error, Result, CBRT3};

/// Rotated-ray contour parameters for `∫₀^∞ exp(i t^alpha) g(t) dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    alpha: f64,
    rotation: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl ContourSpec {
    /// Full rotation `π/(2 alpha)`, absolute tolerance 1e-10, at most 60
    /// panel splits.
    pub fn for_alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::Domain("contour exponent alpha must exceed 1"));
        }
        Ok(ContourSpec {
            alpha,
            rotation: std::f64::consts::FRAC_PI_2 / alpha,
            abs_tol: 1e-10,
            max_subdivisions: 60,
        })
    }

    /// Same contour with a reduced rotation angle; `0 < rotation <= π/(2
    /// alpha)` keeps the kernel decaying.
    pub fn with_rotation(mut self, rotation: f64) -> Result<Self> {
        let max = std::f64::consts::FRAC_PI_2 / self.alpha;
        if !(rotation > 0.0 && rotation <= max * (1.0 + 1e-12)) {
            return Err(Error::Domain("rotation must lie in (0, pi/(2 alpha)]"));
        }
        self.rotation = rotation;
        Ok(self)
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::Domain("abs_tol must be positive"));
        }
        self.abs_tol = abs_tol;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }
}

/// Growth envelope of an amplitude along the rotated ray:
/// `|g(e^{iθ} s)| <= s^poly * exp(linear s + quadratic s²)` for `s >= 1`.
/// Calling sites know their amplitudes' exponential type and pass the
/// constants; the envelope only has to be an upper bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct GrowthBound {
    pub poly: f64,
    pub linear: f64,
    pub quadratic: f64,
}

/// Quadrature output: assembled integral, accumulated error estimate
/// (panel estimates plus the tail-truncation allowance), panels used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub abs_err_est: f64,
    pub panels: usize,
}

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1]. Odd indices of XGK are
// the Gauss-7 abscissae.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss/Kronrod pass over [a, b]: Kronrod value and |K15 - G7| estimate.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &wk)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = h * x;
        let pair = f(c - dx) + f(c + dx);
        kron += pair * wk;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, (kron - gauss).norm() * h.abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

/// Truncation point: beyond S the damped integrand stays under
/// `abs_tol / 10` and keeps shrinking, so the discarded tail is negligible.
fn truncation_point(decay: f64, alpha: f64, bound: &GrowthBound, abs_tol: f64) -> Result<f64> {
    let target = (10.0 / abs_tol).ln();
    let mut s = 1.0f64;
    for _ in 0..200 {
        let margin = decay * s.powf(alpha)
            - bound.linear * s
            - bound.quadratic * s * s
            - bound.poly * s.max(1.0).ln()
            - target;
        let slope = alpha * decay * s.powf(alpha - 1.0)
            - bound.linear
            - 2.0 * bound.quadratic * s
            - bound.poly / s;
        if margin >= 0.0 && slope > 0.0 {
            return Ok(s);
        }
        s *= 1.25;
    }
    Err(Error::Domain(
        "amplitude growth defeats the contour damping",
    ))
}

/// Evaluates `∫₀^∞ exp(i t^alpha) g(t) dt` on the rotated ray given by
/// `spec`. `amplitude` is `g` evaluated at complex ray points; `bound` is its
/// growth envelope, used only to place the truncation point.
pub fn rotated_quadrature<F>(
    spec: &ContourSpec,
    amplitude: F,
    bound: &GrowthBound,
) -> Result<QuadEstimate>
where
    F: Fn(Complex64) -> Complex64,
{
    let theta = spec.rotation;
    let (sin_a, cos_a) = (spec.alpha * theta).sin_cos();
    let decay = sin_a;
    if !(decay > 0.0) {
        return Err(Error::Domain("rotation produces no contour damping"));
    }
    let ray = Complex64::new(theta.cos(), theta.sin());
    let upper = truncation_point(decay, spec.alpha, bound, spec.abs_tol)?;

    let integrand = |s: f64| -> Complex64 {
        let sa = s.powf(spec.alpha);
        let kernel = Complex64::new(-decay * sa, cos_a * sa).exp();
        kernel * amplitude(ray * s)
    };

    // Seed with a handful of equal panels, then bisect the worst panel until
    // the summed estimate clears the tolerance.
    const SEED: usize = 8;
    let mut panels: Vec<Panel> = Vec::with_capacity(SEED + spec.max_subdivisions);
    for i in 0..SEED {
        let a = upper * (i as f64) / (SEED as f64);
        let b = upper * ((i + 1) as f64) / (SEED as f64);
        let (value, err) = gk15(&integrand, a, b);
        panels.push(Panel { a, b, value, err });
    }

    let tail_allowance = spec.abs_tol / 10.0;
    let mut splits = 0usize;
    loop {
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let assemble = |panels: &[Panel]| -> Complex64 {
            let sum: Complex64 = panels.iter().map(|p| p.value).sum();
            ray * sum
        };
        if total_err <= spec.abs_tol {
            return Ok(QuadEstimate {
                value: assemble(&panels),
                abs_err_est: total_err + tail_allowance,
                panels: panels.len(),
            });
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::QuadratureStalled {
                value: assemble(&panels),
                abs_err_est: total_err + tail_allowance,
                requested: spec.abs_tol,
                panels: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.err.total_cmp(&b.1.err))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        let (lv, le) = gk15(&integrand, a, mid);
        let (rv, re) = gk15(&integrand, mid, b);
        panels[worst] = Panel {
            a,
            b: mid,
            value: lv,
            err: le,
        };
        panels.push(Panel {
            a: mid,
            b,
            value: rv,
            err: re,
        });
        splits += 1;
    }
}

/// Quadrature evaluation of the symbol `C(alpha, beta)`, with `alpha` taken
/// from the contour spec.
pub fn fresnel_quad(beta: f64, spec: &ContourSpec) -> Result<QuadEstimate> {
    if !beta.is_finite() || beta <= -1.0 {
        return Err(Error::Domain("symbol power beta must exceed -1"));
    }
    let bound = GrowthBound {
        poly: beta.max(0.0),
        ..GrowthBound::default()
    };
    rotated_quadrature(spec, |t| t.powf(beta), &bound)
}

/// Airy function by quadrature: `Ai(x) = (3^{1/3}/π) Re ∫₀^∞ exp(i t³)
/// exp(i 3^{1/3} x t) dt` (the classic integral rescaled so the cubic kernel
/// has unit coefficient). The imaginary part of the result is zero.
/// Practical domain `|x| <= 8`, matching the series evaluator it arbitrates.
pub fn airy_quad_with(x: f64, spec: &ContourSpec) -> Result<QuadEstimate> {
    if !x.is_finite() || x.abs() > 8.0 {
        return Err(Error::Domain("airy quadrature requires |x| <= 8"));
    }
    let c = CBRT3 * x;
    let bound = GrowthBound {
        linear: c.abs(),
        ..GrowthBound::default()
    };
    let q = rotated_quadrature(spec, |t| (Complex64::i() * c * t).exp(), &bound)?;
    let scale = CBRT3 / std::f64::consts::PI;
    Ok(QuadEstimate {
        value: Complex64::new(scale * q.value.re, 0.0),
        abs_err_est: scale * q.abs_err_est,
        panels: q.panels,
    })
}

pub fn airy_quad(x: f64) -> Result<QuadEstimate> {
    airy_quad_with(x, &ContourSpec::for_alpha(3.0)?)
}

/// Fourth-order analogue by quadrature:
/// `∫₀^∞ cos(t⁴ + 2xt + 2x²) dt = Re[exp(2ix²) ∫₀^∞ exp(i t⁴) exp(2ixt) dt]`.
/// Practical domain `|x| <= 4`.
pub fn airy4_quad_with(x: f64, spec: &ContourSpec) -> Result<QuadEstimate> {
    if !x.is_finite() || x.abs() > 4.0 {
        return Err(Error::Domain("quartic airy quadrature requires |x| <= 4"));
    }
    let bound = GrowthBound {
        linear: 2.0 * x.abs(),
        ..GrowthBound::default()
    };
    let q = rotated_quadrature(spec, |t| (Complex64::i() * 2.0 * x * t).exp(), &bound)?;
    let front = Complex64::new(0.0, 2.0 * x * x).exp();
    Ok(QuadEstimate {
        value: Complex64::new((front * q.value).re, 0.0),
        abs_err_est: q.abs_err_est,
        panels: q.panels,
    })
}

pub fn airy4_quad(x: f64) -> Result<QuadEstimate> {
    airy4_quad_with(x, &ContourSpec::for_alpha(4.0)?)
}

/// Half-line Pearcey integral by quadrature:
/// `P(x, y) = ∫₀^∞ exp(i (u⁴ + x u² + y u)) du`. Practical domain
/// `|x|, |y| <= 3`.
pub fn pearcey_quad_with(x: f64, y: f64, spec: &ContourSpec) -> Result<QuadEstimate> {
    if !(x.is_finite() && y.is_finite() && x.abs() <= 3.0 && y.abs() <= 3.0) {
        return Err(Error::Domain("pearcey quadrature requires |x|, |y| <= 3"));
    }
    let bound = GrowthBound {
        linear: y.abs(),
        quadratic: x.abs(),
        ..GrowthBound::default()
    };
    rotated_quadrature(
        spec,
        |u| (Complex64::i() * (x * u * u + y * u)).exp(),
        &bound,
    )
}

pub fn pearcey_quad(x: f64, y: f64) -> Result<QuadEstimate> {
    pearcey_quad_with(x, y, &ContourSpec::for_alpha(4.0)?)
}

/// One row of the pinned-oracle fixture table.
#[derive(Debug, Clone, PartialEq)]
pub struct PinnedValue {
    pub function: String,
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
    pub err: f64,
    pub protocol: String,
}

/// Pinned oracle values shipped with the crate. Regenerated only through the
/// two-rotation protocol (see `tests/fixture_regen.rs`).
pub const PINNED_FIXTURE: &str = include_str!("../fixtures/oracle_pinned.txt");

/// Parses the plain-text fixture table: one row per line,
/// `function x y re im err protocol`, `#` comments and blank lines skipped.
pub fn parse_pinned(text: &str) -> std::result::Result<Vec<PinnedValue>, String> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(format!(
                "fixture line {}: expected 7 fields, found {}",
                idx + 1,
                fields.len()
            ));
        }
        let num = |s: &str, what: &str| -> std::result::Result<f64, String> {
            s.parse::<f64>()
                .map_err(|_| format!("fixture line {}: bad {what} value {s:?}", idx + 1))
        };
        rows.push(PinnedValue {
            function: fields[0].to_string(),
            x: num(fields[1], "x")?,
            y: num(fields[2], "y")?,
            re: num(fields[3], "re")?,
            im: num(fields[4], "im")?,
            err: num(fields[5], "err")?,
            protocol: fields[6].to_string(),
        });
    }
    Ok(rows)
}

/// Serializes rows in the exact format `parse_pinned` reads, reals with 17
/// significant digits.
pub fn format_pinned(rows: &[PinnedValue]) -> String {
    let mut out = String::from(
        "# Pinned quadrature-oracle values.\n\
         # Columns: function x y re im err protocol\n\
         # Regenerate only via the two-rotation protocol (tests/fixture_regen.rs).\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {}\n",
            r.function, r.x, r.y, r.re, r.im, r.err, r.protocol
        ));
    }
    out
}

/// Re-evaluates the integral a fixture row pins, at the default contour.
pub fn evaluate_pinned(row: &PinnedValue) -> Result<QuadEstimate> {
    match row.function.as_str() {
        "ai" => airy_quad(row.x),
        "ai4" => airy4_quad(row.x),
        "pearcey-halfline" => pearcey_quad(row.x, row.y),
        _ => Err(Error::Domain("unknown fixture function id")),
    }
}
