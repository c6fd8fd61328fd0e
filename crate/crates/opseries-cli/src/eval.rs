//! Flag resolution, point evaluation and grid assembly for `eval`/`table`.

use crate::record::{render, OutputRecord};
use crate::{EvalArgs, FunctionId, MethodArg, PolicyArgs, TableArgs, VariantArg};
use opseries::airy::{airy4, airy_ai, Airy4Variant, AiryEvalPoint};
use opseries::opcalc::{fresnel_symbol, FresnelSymbol};
use opseries::oracle::{
    airy4_quad_with, airy_quad_with, fresnel_quad, pearcey_quad_with, ContourSpec, QuadEstimate,
};
use opseries::pearcey::{pearcey_double_sum, pearcey_hermite, PearceyPoint};
use opseries::{Error, EvalResult, TruncationPolicy};
use rayon::prelude::*;

const DEFAULT_MAX_TERMS: usize = 500;
const DEFAULT_SERIES_TOL: f64 = 1e-12;
const DEFAULT_QUAD_TOL: f64 = 1e-10;
const SMALL_STREAK: usize = 3;

/// Route configuration after flag validation: series evaluators need a
/// truncation policy, the quadrature oracle an absolute tolerance.
pub enum RouteConfig {
    Series { policy: TruncationPolicy },
    Quadrature { abs_tol: f64 },
}

pub struct Resolved {
    pub method: MethodArg,
    pub variant: Airy4Variant,
    pub route: RouteConfig,
}

fn method_flag_token(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Series => "series",
        MethodArg::Hermite => "hermite",
        MethodArg::DoubleSum => "double-sum",
        MethodArg::Quadrature => "quadrature",
    }
}

fn resolve_max_terms(flag: Option<usize>) -> Result<usize, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("OPSERIES_MAX_TERMS") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("OPSERIES_MAX_TERMS must be a non-negative integer, got {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_TERMS),
        Err(e) => Err(format!("OPSERIES_MAX_TERMS is unreadable: {e}")),
    }
}

/// Validates the method/variant flags against the chosen function and builds
/// the route configuration. Selector flags that name another function's
/// semantics are rejected; tuning flags a route does not read are inert.
pub fn resolve(function: FunctionId, p: &PolicyArgs) -> Result<Resolved, String> {
    let applies = match function {
        FunctionId::PearceyHalfline => true,
        FunctionId::Ai | FunctionId::Ai4 | FunctionId::Csym => {
            matches!(p.method, MethodArg::Series | MethodArg::Quadrature)
        }
    };
    if !applies {
        return Err(format!(
            "--method {} does not apply to --function {}",
            method_flag_token(p.method),
            function.token()
        ));
    }
    let variant = match (function, p.variant) {
        (FunctionId::Ai4, Some(VariantArg::Verbatim)) => Airy4Variant::Verbatim,
        (FunctionId::Ai4, _) => Airy4Variant::Corrected,
        (_, Some(_)) => return Err("--variant applies only to --function ai4".to_string()),
        (_, None) => Airy4Variant::Corrected,
    };
    let route = if p.method == MethodArg::Quadrature {
        let abs_tol = p.tol.unwrap_or(DEFAULT_QUAD_TOL);
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err("--tol must be a positive number".to_string());
        }
        RouteConfig::Quadrature { abs_tol }
    } else {
        let rel_tol = p.tol.unwrap_or(DEFAULT_SERIES_TOL);
        let max_terms = resolve_max_terms(p.max_terms)?;
        let policy = TruncationPolicy::new(rel_tol, SMALL_STREAK, max_terms)
            .map_err(|e| e.to_string())?;
        RouteConfig::Series { policy }
    };
    Ok(Resolved {
        method: p.method,
        variant,
        route,
    })
}

fn contour(alpha: f64, abs_tol: f64) -> Result<ContourSpec, String> {
    ContourSpec::for_alpha(alpha)
        .and_then(|s| s.with_abs_tol(abs_tol))
        .map_err(|e| e.to_string())
}

fn record(
    function: FunctionId,
    x: f64,
    y: f64,
    re: f64,
    im: f64,
    abs_err_est: f64,
    terms: usize,
    converged: bool,
    method: &str,
) -> OutputRecord {
    OutputRecord {
        function_id: function.token().to_string(),
        x,
        y,
        re,
        im,
        abs_err_est,
        terms,
        converged,
        method: method.to_string(),
    }
}

fn series_record(
    function: FunctionId,
    x: f64,
    y: f64,
    r: EvalResult,
    method: &str,
) -> OutputRecord {
    record(
        function,
        x,
        y,
        r.value.re,
        r.value.im,
        r.abs_err_est,
        r.terms_used,
        r.converged,
        method,
    )
}

/// A stalled quadrature still carries its best value; it becomes a
/// non-converged record (exit 1) rather than a refusal (exit 2).
fn quad_record(
    function: FunctionId,
    x: f64,
    y: f64,
    out: opseries::numerics::Result<QuadEstimate>,
) -> Result<OutputRecord, String> {
    match out {
        Ok(q) => Ok(record(
            function,
            x,
            y,
            q.value.re,
            q.value.im,
            q.abs_err_est,
            q.panels,
            true,
            "quadrature",
        )),
        Err(Error::QuadratureStalled {
            value,
            abs_err_est,
            panels,
            ..
        }) => Ok(record(
            function,
            x,
            y,
            value.re,
            value.im,
            abs_err_est,
            panels,
            false,
            "quadrature",
        )),
        Err(e) => Err(e.to_string()),
    }
}

/// Evaluates one point. For `csym`, `x` is alpha and `y` is beta; for `ai`
/// and `ai4` the caller passes `y = 0`.
pub fn evaluate_point(
    function: FunctionId,
    x: f64,
    y: f64,
    resolved: &Resolved,
) -> Result<OutputRecord, String> {
    if let FunctionId::Csym = function {
        let sym = FresnelSymbol::new(x, y).map_err(|e| e.to_string())?;
        return match resolved.route {
            RouteConfig::Quadrature { abs_tol } => {
                let spec = contour(sym.alpha(), abs_tol)?;
                quad_record(function, x, y, fresnel_quad(sym.beta(), &spec))
            }
            RouteConfig::Series { .. } => {
                let v = fresnel_symbol(sym).map_err(|e| e.to_string())?;
                Ok(record(function, x, y, v.re, v.im, 0.0, 0, true, "closed-form"))
            }
        };
    }
    match resolved.route {
        RouteConfig::Quadrature { abs_tol } => {
            let out = match function {
                FunctionId::Ai => airy_quad_with(x, &contour(3.0, abs_tol)?),
                FunctionId::Ai4 => airy4_quad_with(x, &contour(4.0, abs_tol)?),
                FunctionId::PearceyHalfline => pearcey_quad_with(x, y, &contour(4.0, abs_tol)?),
                FunctionId::Csym => unreachable!("handled above"),
            };
            quad_record(function, x, y, out)
        }
        RouteConfig::Series { ref policy } => match function {
            FunctionId::Ai => {
                let p = AiryEvalPoint::new(x).map_err(|e| e.to_string())?;
                let r = airy_ai(p, policy).map_err(|e| e.to_string())?;
                Ok(series_record(function, x, y, r, "series"))
            }
            FunctionId::Ai4 => {
                let p = AiryEvalPoint::new(x).map_err(|e| e.to_string())?;
                let r = airy4(p, resolved.variant, policy).map_err(|e| e.to_string())?;
                Ok(series_record(function, x, y, r, "series"))
            }
            FunctionId::PearceyHalfline => {
                let p = PearceyPoint::new(x, y).map_err(|e| e.to_string())?;
                let (r, method) = match resolved.method {
                    MethodArg::Hermite => (pearcey_hermite(p, policy), "hermite"),
                    _ => (pearcey_double_sum(p, policy), "double-sum"),
                };
                Ok(series_record(function, x, y, r.map_err(|e| e.to_string())?, method))
            }
            FunctionId::Csym => unreachable!("handled above"),
        },
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive; both
/// endpoints are pinned exactly so grids hit domain boundaries bit-for-bit.
pub fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, String> {
    if steps == 0 {
        return Err("step count must be at least 1".to_string());
    }
    if !(min.is_finite() && max.is_finite()) {
        return Err("grid bounds must be finite".to_string());
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / ((steps - 1) as f64);
    Ok((0..steps)
        .map(|i| if i == steps - 1 { max } else { min + h * i as f64 })
        .collect())
}

fn point_args(args: &EvalArgs) -> Result<(f64, f64), String> {
    let function = args.function;
    let take = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| format!("--function {} requires {flag}", function.token()))
    };
    let forbid = |v: Option<f64>, flag: &str| {
        if v.is_some() {
            Err(format!(
                "{flag} does not apply to --function {}",
                function.token()
            ))
        } else {
            Ok(())
        }
    };
    match function {
        FunctionId::Ai | FunctionId::Ai4 => {
            forbid(args.y, "--y")?;
            forbid(args.alpha, "--alpha")?;
            forbid(args.beta, "--beta")?;
            Ok((take(args.x, "--x")?, 0.0))
        }
        FunctionId::PearceyHalfline => {
            forbid(args.alpha, "--alpha")?;
            forbid(args.beta, "--beta")?;
            Ok((take(args.x, "--x")?, take(args.y, "--y")?))
        }
        FunctionId::Csym => {
            forbid(args.x, "--x")?;
            forbid(args.y, "--y")?;
            Ok((take(args.alpha, "--alpha")?, take(args.beta, "--beta")?))
        }
    }
}

pub fn run_eval(args: &EvalArgs) -> Result<bool, String> {
    let resolved = resolve(args.function, &args.policy)?;
    let (x, y) = point_args(args)?;
    let rec = evaluate_point(args.function, x, y, &resolved)?;
    let converged = rec.converged;
    print!("{}", render(&[rec], args.format));
    Ok(converged)
}

fn y_axis(args: &TableArgs) -> Result<Option<Vec<f64>>, String> {
    let wants_y = matches!(
        args.function,
        FunctionId::PearceyHalfline | FunctionId::Csym
    );
    match (args.y_min, args.y_max, args.y_steps) {
        (None, None, None) => {
            if wants_y {
                Err(format!(
                    "--function {} needs a y axis: --y-min, --y-max and --y-steps",
                    args.function.token()
                ))
            } else {
                Ok(None)
            }
        }
        (Some(a), Some(b), Some(s)) => {
            if wants_y {
                Ok(Some(linspace(a, b, s).map_err(|e| format!("y axis: {e}"))?))
            } else {
                Err(format!(
                    "the y axis does not apply to --function {}",
                    args.function.token()
                ))
            }
        }
        _ => Err("the y axis needs --y-min, --y-max and --y-steps together".to_string()),
    }
}

pub fn run_table(args: &TableArgs) -> Result<bool, String> {
    let resolved = resolve(args.function, &args.policy)?;
    let xs = linspace(args.x_min, args.x_max, args.x_steps).map_err(|e| format!("x axis: {e}"))?;
    let ys = y_axis(args)?;
    let points: Vec<(f64, f64)> = match &ys {
        None => xs.iter().map(|&x| (x, 0.0)).collect(),
        Some(ys) => xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .collect(),
    };
    // Points are independent; the indexed collect keeps output in grid order
    // no matter how the work is scheduled.
    let results: Vec<Result<OutputRecord, String>> = points
        .par_iter()
        .map(|&(x, y)| evaluate_point(args.function, x, y, &resolved))
        .collect();
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        records.push(r?);
    }
    let all_converged = records.iter().all(|r| r.converged);
    print!("{}", render(&records, args.format));
    Ok(all_converged)
}
