//! Gauss–Legendre oracle for the trapping probability.
//!
//! Integrates |ψ|² built from the complex amplitude A and the exterior
//! S-matrix form, so it shares nothing with the closed form for P(k).

use gauss_quad::GaussLegendre;

use crate::error::{domain, Error, Result};
use crate::scattering::{check_k, wavefunction};
use crate::well::PotentialWell;

const PANEL_ORDER: usize = 16;
const MAX_POINTS: usize = 1 << 20;
const TOLERANCE: f64 = 1e-12;

fn composite<F: Fn(f64) -> f64>(rule: &GaussLegendre, lo: f64, hi: f64, panels: usize, f: F) -> f64 {
    let width = (hi - lo) / panels as f64;
    (0..panels)
        .map(|i| {
            let a = lo + i as f64 * width;
            rule.integrate(a, a + width, &f)
        })
        .sum()
}

fn density(well: &PotentialWell, k: f64, r: f64) -> f64 {
    wavefunction(well, k, r).map(|psi| psi.norm_sqr()).unwrap_or(f64::NAN)
}

fn rule() -> GaussLegendre {
    GaussLegendre::new(PANEL_ORDER).expect("fixed panel order is valid")
}

/// (1/a)∫₀ᵃ |ψ(k; r)|² dr with a fixed budget of `n_points` nodes.
pub fn trapping_probability_quadrature(well: &PotentialWell, k: f64, n_points: usize) -> Result<f64> {
    check_k(k)?;
    if n_points < PANEL_ORDER {
        return domain(format!("need at least {PANEL_ORDER} quadrature points, got {n_points}"));
    }
    let panels = n_points / PANEL_ORDER;
    Ok(composite(&rule(), 0.0, well.a, panels, |r| density(well, k, r)) / well.a)
}

/// Integral of |ψ|² over [lo, hi] (both on the same side of `a`), doubling
/// the node count until successive estimates agree to 1e-12.
fn adaptive_integral(well: &PotentialWell, k: f64, lo: f64, hi: f64) -> Result<f64> {
    let rule = rule();
    let mut panels = 1;
    let mut prev = composite(&rule, lo, hi, panels, |r| density(well, k, r));
    while panels * PANEL_ORDER < MAX_POINTS {
        panels *= 2;
        let next = composite(&rule, lo, hi, panels, |r| density(well, k, r));
        if (next - prev).abs() < TOLERANCE {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Numerical(format!(
        "quadrature did not converge at k = {k} on [{lo}, {hi}]"
    )))
}

/// Adaptive version of [`trapping_probability_quadrature`].
pub fn trapping_probability_adaptive(well: &PotentialWell, k: f64) -> Result<f64> {
    check_k(k)?;
    Ok(adaptive_integral(well, k, 0.0, well.a)? / well.a)
}

/// (1/r)∫₀ʳ |ψ|² dr for r ≥ a, split at the well edge.
pub fn trapping_probability_within(well: &PotentialWell, k: f64, r: f64) -> Result<f64> {
    check_k(k)?;
    if !(r >= well.a) {
        return domain(format!("radius must be at least a = {}, got r = {r}", well.a));
    }
    let inner = adaptive_integral(well, k, 0.0, well.a)?;
    let outer = if r > well.a {
        adaptive_integral(well, k, well.a, r)?
    } else {
        0.0
    };
    Ok((inner + outer) / r)
}
