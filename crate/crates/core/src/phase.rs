//! Continuous branch of the resonant phase shift φ(k).
//!
//! tan φ = k·tan(qa)/q only fixes φ modulo π. The unwrapper marches from
//! `K_MIN` with adaptive steps, choosing at each step the branch closest to
//! the trapezoidal prediction built from the analytic slope dφ/dk = l/2.
//! A step is halved whenever the phase moves by π/2 or more, or strays more
//! than π/4 from the prediction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{domain, Error, Result};
use crate::scattering::traversal_distance;
use crate::well::PotentialWell;

/// Smallest wave number at which any scattering function is evaluated.
pub const K_MIN: f64 = 1e-6;

const MIN_STEP: f64 = 1e-14;

/// Principal value of φ in (−π, π], from atan2(k·sin qa, q·cos qa).
pub fn phase_principal(well: &PotentialWell, k: f64) -> f64 {
    let q = well.q(k);
    let qa = q * well.a;
    (k * qa.sin()).atan2(q * qa.cos())
}

/// Anchor of the continuous branch: the arctangent branch in (−π/2, π/2],
/// which is ≈ 0 for small k away from a binding threshold.
fn anchor(well: &PotentialWell, k: f64) -> f64 {
    let p = phase_principal(well, k);
    nearest_branch(p, 0.0)
}

/// `p + mπ` closest to `target`.
#[inline]
fn nearest_branch(p: f64, target: f64) -> f64 {
    p + ((target - p) / PI).round() * PI
}

/// Incremental unwrapper holding the state of one forward scan.
#[derive(Debug, Clone)]
pub struct PhaseUnwrapper<'w> {
    well: &'w PotentialWell,
    k: f64,
    phi: f64,
    slope: f64,
    step: f64,
}

impl<'w> PhaseUnwrapper<'w> {
    pub fn new(well: &'w PotentialWell) -> Self {
        let k = K_MIN;
        Self {
            well,
            k,
            phi: anchor(well, k),
            slope: 0.5 * traversal_distance(well, k),
            step: 0.05 / well.a,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Advances the scan to `k` (which must not lie behind the current
    /// position) and returns the unwrapped φ there.
    pub fn advance_to(&mut self, k: f64) -> Result<f64> {
        if !(k > 0.0) || !k.is_finite() {
            return domain(format!("wave number must be positive, got k = {k}"));
        }
        if k < self.k {
            if k <= K_MIN {
                return Ok(anchor(self.well, k));
            }
            return domain(format!(
                "unwrapper is at k = {}, cannot move back to {k}",
                self.k
            ));
        }
        while self.k < k {
            let mut h = self.step.min(k - self.k);
            loop {
                let k1 = if h >= k - self.k { k } else { self.k + h };
                let slope1 = 0.5 * traversal_distance(self.well, k1);
                let predicted = self.phi + 0.5 * (self.slope + slope1) * (k1 - self.k);
                let phi1 = nearest_branch(phase_principal(self.well, k1), predicted);
                if (phi1 - self.phi).abs() < FRAC_PI_2 && (phi1 - predicted).abs() < FRAC_PI_4 {
                    self.k = k1;
                    self.phi = phi1;
                    self.slope = slope1;
                    self.step = (2.0 * h).min(0.25 / self.well.a);
                    break;
                }
                h *= 0.5;
                if h < MIN_STEP {
                    return Err(Error::Numerical(format!(
                        "phase unwrapping step underflow near k = {}",
                        self.k
                    )));
                }
            }
        }
        Ok(self.phi)
    }
}

/// Continuous resonant phase φ(k), anchored at φ(K_MIN) ≈ 0.
pub fn phase_resonant(well: &PotentialWell, k: f64) -> Result<f64> {
    PhaseUnwrapper::new(well).advance_to(k)
}

/// Full phase shift θ = φ − ka on the same branch as [`phase_resonant`].
pub fn phase_full(well: &PotentialWell, k: f64) -> Result<f64> {
    Ok(phase_resonant(well, k)? - k * well.a)
}
