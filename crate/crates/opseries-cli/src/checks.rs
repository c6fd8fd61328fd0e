//! Named cross-validation suites behind `opseries check`. Each check prints
//! one `[PASS]`/`[FAIL]` line with the measured residual and its tolerance.

use crate::{CheckArgs, Suite};
use opseries::airy::{airy_ai, airy_ai_deriv, AiryEvalPoint};
use opseries::opcalc::{fresnel_symbol, FresnelSymbol};
use opseries::oracle::{evaluate_pinned, fresnel_quad, parse_pinned, ContourSpec, PINNED_FIXTURE};
use opseries::pearcey::{
    hermite2, pearcey_double_sum, pearcey_hermite, pearcey_pde_residual, HermiteArgs, PearceyPoint,
};
use opseries::{Complex64, TruncationPolicy};
use std::path::Path;

const AIRY_GRID: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
const PEARCEY_GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
const SYMBOL_ALPHAS: [f64; 5] = [1.5, 2.0, 3.0, 4.0, 5.0];
const SYMBOL_BETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
const HERMITE_GRID: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

const ODE_TOL: f64 = 1e-8;
const PDE_TOL: f64 = 1e-8;
const PDE_FD_STEP: f64 = 1e-2;
const PDE_FD_TOL: f64 = 1e-3;
const DUAL_TOL: f64 = 1e-8;
const CLOSED_FORM_TOL: f64 = 1e-8;
const HERMITE_REC_TOL: f64 = 1e-12;
const HERMITE_OP_TOL: f64 = 5e-15;
const FIXTURE_TOL: f64 = 1e-8;

struct CheckOutcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn fail(name: &'static str, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: false,
        detail,
    }
}

fn judged(name: &'static str, worst: f64, tol: f64, scope: &str) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: worst <= tol,
        detail: format!("{scope}: worst {worst:.2e} (tol {tol:.1e})"),
    }
}

pub fn run_check(args: &CheckArgs) -> Result<bool, String> {
    if args.fixtures.is_some() && args.suite != Suite::All {
        return Err("--fixtures applies only to --suite all".to_string());
    }
    if let Some(t) = args.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err("--tol must be a positive number".to_string());
        }
    }
    let tol = args.tol;
    let mut outcomes = Vec::new();
    match args.suite {
        Suite::Ode => outcomes.push(ode_check(tol)),
        Suite::Pde => outcomes.extend(pde_checks(tol)),
        Suite::DualExpansion => outcomes.push(dual_expansion_check(tol)),
        Suite::ClosedForm => outcomes.push(closed_form_check(tol)),
        Suite::Hermite => outcomes.extend(hermite_checks(tol)),
        Suite::All => {
            outcomes.push(closed_form_check(tol));
            outcomes.push(ode_check(tol));
            outcomes.extend(pde_checks(tol));
            outcomes.push(dual_expansion_check(tol));
            outcomes.extend(hermite_checks(tol));
            outcomes.push(fixture_check(args.fixtures.as_deref(), tol));
        }
    }
    let mut all_passed = true;
    for o in &outcomes {
        let tag = if o.passed { "[PASS]" } else { "[FAIL]" };
        println!("{tag} {}: {}", o.name, o.detail);
        all_passed &= o.passed;
    }
    Ok(all_passed)
}

/// |Ai''(x) - x Ai(x)| with both factors from term-wise differentiated series.
fn ode_check(tol: Option<f64>) -> CheckOutcome {
    const NAME: &str = "ode";
    let tol = tol.unwrap_or(ODE_TOL);
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for &x in &AIRY_GRID {
        let p = AiryEvalPoint::new(x).expect("grid point inside the domain");
        let (v, d2) = match (airy_ai(p, &policy), airy_ai_deriv(p, 2, &policy)) {
            (Ok(v), Ok(d2)) => (v, d2),
            (Err(e), _) | (_, Err(e)) => {
                return fail(NAME, format!("evaluation failed at x = {x}: {e}"))
            }
        };
        if !(v.converged && d2.converged) {
            return fail(NAME, format!("series did not converge at x = {x}"));
        }
        worst = worst.max((d2.value - v.value * x).norm());
    }
    judged(
        NAME,
        worst,
        tol,
        &format!("|Ai'' - x Ai| on {} x-values", AIRY_GRID.len()),
    )
}

fn pearcey_value(x: f64, y: f64, policy: &TruncationPolicy) -> Result<Complex64, String> {
    let p = PearceyPoint::new(x, y).map_err(|e| e.to_string())?;
    let r = pearcey_double_sum(p, policy).map_err(|e| e.to_string())?;
    if !r.converged {
        return Err(format!("series did not converge at ({x}, {y})"));
    }
    Ok(r.value)
}

/// Central second-order differences of the double sum at step `h`.
fn fd_residual(x: f64, y: f64, h: f64, policy: &TruncationPolicy) -> Result<f64, String> {
    let dx = (pearcey_value(x + h, y, policy)? - pearcey_value(x - h, y, policy)?) / (2.0 * h);
    let dyy = (pearcey_value(x, y + h, policy)? - 2.0 * pearcey_value(x, y, policy)?
        + pearcey_value(x, y - h, policy)?)
        / (h * h);
    Ok((Complex64::i() * dx - dyy).norm())
}

/// The evolution identity i dP/dx = d2P/dy2, first with analytic term-wise
/// derivatives, then cross-checked by finite differences of the plain sum.
fn pde_checks(tol: Option<f64>) -> Vec<CheckOutcome> {
    const ANALYTIC: &str = "pde-analytic";
    const FD: &str = "pde-fd";
    let analytic_tol = tol.unwrap_or(PDE_TOL);
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for &x in &PEARCEY_GRID {
        for &y in &PEARCEY_GRID {
            let p = PearceyPoint::new(x, y).expect("grid point inside the domain");
            match pearcey_pde_residual(p, &policy) {
                Ok(r) if r.converged => worst = worst.max(r.residual),
                Ok(_) => {
                    return vec![fail(
                        ANALYTIC,
                        format!("differentiated series did not converge at ({x}, {y})"),
                    )]
                }
                Err(e) => {
                    return vec![fail(ANALYTIC, format!("evaluation failed at ({x}, {y}): {e}"))]
                }
            }
        }
    }
    let analytic = judged(
        ANALYTIC,
        worst,
        analytic_tol,
        &format!(
            "|i dP/dx - d2P/dy2| on the {}x{} grid",
            PEARCEY_GRID.len(),
            PEARCEY_GRID.len()
        ),
    );

    let mut worst_fd = 0.0f64;
    for &x in &PEARCEY_GRID {
        for &y in &PEARCEY_GRID {
            match fd_residual(x, y, PDE_FD_STEP, &policy) {
                Ok(r) => worst_fd = worst_fd.max(r),
                Err(e) => return vec![analytic, fail(FD, e)],
            }
        }
    }
    let fd = judged(
        FD,
        worst_fd,
        PDE_FD_TOL,
        &format!("central differences at step {PDE_FD_STEP:.0e}"),
    );
    vec![analytic, fd]
}

/// Per-component agreement of the two Pearcey expansions.
fn dual_expansion_check(tol: Option<f64>) -> CheckOutcome {
    const NAME: &str = "dual-expansion";
    let tol = tol.unwrap_or(DUAL_TOL);
    let policy = TruncationPolicy::default();
    let mut worst = 0.0f64;
    for &x in &PEARCEY_GRID {
        for &y in &PEARCEY_GRID {
            let p = PearceyPoint::new(x, y).expect("grid point inside the domain");
            let (ds, hs) = match (pearcey_double_sum(p, &policy), pearcey_hermite(p, &policy)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    return fail(NAME, format!("evaluation failed at ({x}, {y}): {e}"))
                }
            };
            if !(ds.converged && hs.converged) {
                return fail(NAME, format!("series did not converge at ({x}, {y})"));
            }
            let dev = (ds.value.re - hs.value.re)
                .abs()
                .max((ds.value.im - hs.value.im).abs());
            worst = worst.max(dev);
        }
    }
    judged(
        NAME,
        worst,
        tol,
        &format!(
            "double-sum vs hermite per component on the {}x{} grid",
            PEARCEY_GRID.len(),
            PEARCEY_GRID.len()
        ),
    )
}

/// Gamma closed form of C(alpha, beta) against the quadrature oracle.
fn closed_form_check(tol: Option<f64>) -> CheckOutcome {
    const NAME: &str = "closed-form";
    let tol = tol.unwrap_or(CLOSED_FORM_TOL);
    let mut worst = 0.0f64;
    for &alpha in &SYMBOL_ALPHAS {
        for &beta in &SYMBOL_BETAS {
            let exact = fresnel_symbol(FresnelSymbol::new(alpha, beta).expect("grid is valid"))
                .expect("gamma argument is moderate");
            let spec = ContourSpec::for_alpha(alpha).expect("alpha > 1");
            let q = match fresnel_quad(beta, &spec) {
                Ok(q) => q,
                Err(e) => {
                    return fail(
                        NAME,
                        format!("quadrature failed at alpha = {alpha}, beta = {beta}: {e}"),
                    )
                }
            };
            let dev = (q.value.re - exact.re).abs().max((q.value.im - exact.im).abs());
            worst = worst.max(dev);
        }
    }
    judged(
        NAME,
        worst,
        tol,
        &format!(
            "closed form vs quadrature per component on {} (alpha, beta) pairs",
            SYMBOL_ALPHAS.len() * SYMBOL_BETAS.len()
        ),
    )
}

fn hermite_at(n: usize, z: Complex64, w: Complex64) -> Result<Complex64, String> {
    let args = HermiteArgs::new(n, z, w).map_err(|e| e.to_string())?;
    hermite2(&args).map_err(|e| e.to_string())
}

/// Three-term recurrence and the exponentiated-operator construction.
fn hermite_checks(tol: Option<f64>) -> Vec<CheckOutcome> {
    const REC: &str = "hermite-recurrence";
    const OP: &str = "hermite-operator";
    let rec_tol = tol.unwrap_or(HERMITE_REC_TOL);
    let mut worst = 0.0f64;
    for &zv in &HERMITE_GRID {
        for &wv in &HERMITE_GRID {
            let z = Complex64::new(zv, 0.0);
            let w = Complex64::new(wv, 0.0);
            for n in 1..=30usize {
                let (hm, h, hp) = match (
                    hermite_at(n - 1, z, w),
                    hermite_at(n, z, w),
                    hermite_at(n + 1, z, w),
                ) {
                    (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                    _ => {
                        return vec![fail(
                            REC,
                            format!("hermite evaluation failed at n = {n}, z = {zv}, w = {wv}"),
                        )]
                    }
                };
                let rhs = z * h + 2.0 * wv * (n as f64) * hm;
                let dev = (hp - rhs).norm();
                // Relative where the reference is nonzero, absolute at the
                // polynomial's exact zeros.
                let measured = if hp.norm() == 0.0 {
                    dev
                } else {
                    dev / hp.norm()
                };
                worst = worst.max(measured);
            }
        }
    }
    let recurrence = judged(
        REC,
        worst,
        rec_tol,
        &format!(
            "H(n+1) = z H(n) + 2 w n H(n-1), n <= 30, {} (z, w) pairs",
            HERMITE_GRID.len() * HERMITE_GRID.len()
        ),
    );

    // e^{w d2/dz2} z^n expanded literally: sum_j w^j / j! * (d/dz)^{2j} z^n.
    let mut worst_op = 0.0f64;
    for &zv in &HERMITE_GRID {
        for &wv in &HERMITE_GRID {
            let z = Complex64::new(zv, 0.0);
            let w = Complex64::new(wv, 0.0);
            for n in 0..=8usize {
                let mut brute = Complex64::new(0.0, 0.0);
                let mut coeff = Complex64::new(1.0, 0.0);
                for j in 0..=(n / 2) {
                    let mut falling = 1.0f64;
                    for i in 0..(2 * j) {
                        falling *= (n - i) as f64;
                    }
                    brute += coeff * falling * z.powu((n - 2 * j) as u32);
                    coeff = coeff * w / (j as f64 + 1.0);
                }
                let h = match hermite_at(n, z, w) {
                    Ok(h) => h,
                    Err(e) => return vec![recurrence, fail(OP, format!("n = {n}: {e}"))],
                };
                let dev = (h - brute).norm();
                let measured = if h.norm() == 0.0 { dev } else { dev / h.norm() };
                worst_op = worst_op.max(measured);
            }
        }
    }
    let operator = judged(
        OP,
        worst_op,
        HERMITE_OP_TOL,
        "exponentiated heat operator vs definition sum, n <= 8",
    );
    vec![recurrence, operator]
}

/// Re-runs the quadrature oracle over every pinned fixture row.
fn fixture_check(path: Option<&Path>, tol: Option<f64>) -> CheckOutcome {
    const NAME: &str = "fixture";
    let tol = tol.unwrap_or(FIXTURE_TOL);
    let owned;
    let text = match path {
        None => PINNED_FIXTURE,
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => {
                owned = t;
                &owned
            }
            Err(e) => return fail(NAME, format!("cannot read {}: {e}", p.display())),
        },
    };
    let rows = match parse_pinned(text) {
        Ok(rows) => rows,
        Err(e) => return fail(NAME, e),
    };
    if rows.is_empty() {
        return fail(NAME, "fixture holds no rows".to_string());
    }
    let mut worst = 0.0f64;
    for row in &rows {
        let q = match evaluate_pinned(row) {
            Ok(q) => q,
            Err(e) => {
                return fail(
                    NAME,
                    format!(
                        "oracle failed on {} ({}, {}): {e}",
                        row.function, row.x, row.y
                    ),
                )
            }
        };
        let dev = (q.value.re - row.re).abs().max((q.value.im - row.im).abs());
        if !dev.is_finite() {
            return fail(
                NAME,
                format!("non-finite deviation on {} ({}, {})", row.function, row.x, row.y),
            );
        }
        worst = worst.max(dev);
    }
    judged(
        NAME,
        worst,
        tol,
        &format!("{} pinned rows re-evaluated per component", rows.len()),
    )
}
