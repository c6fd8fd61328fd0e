//! The README quick-start, kept as a compiled example so the snippet
//! cannot drift out of date.

use opseries::airy::{airy_ai, AiryEvalPoint};
use opseries::opcalc::{fresnel_symbol, FresnelSymbol};
use opseries::pearcey::{pearcey_hermite, PearceyPoint};
use opseries::TruncationPolicy;

fn main() -> opseries::numerics::Result<()> {
    let policy = TruncationPolicy::default(); // rel 1e-14, 500-term cap

    let ai = airy_ai(AiryEvalPoint::new(0.5)?, &policy)?;
    println!("Ai(0.5) = {} +/- {}", ai.value.re, ai.abs_err_est);

    let p = pearcey_hermite(PearceyPoint::new(1.0, -0.5)?, &policy)?;
    println!("P(1, -0.5) = {} (converged: {})", p.value, p.converged);

    let c = fresnel_symbol(FresnelSymbol::new(3.0, 0.0)?)?;
    println!("C(3, 0) = {c}");
    Ok(())
}
