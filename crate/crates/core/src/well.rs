//! Geometry of the attractive square well.
//!
//! Units are ħ = μ = 1 throughout, so the strength is α² = 2a²|V₀| and the
//! internal wave number is q² = k² + 2|V₀|.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Attractive square well of radius `a` and depth `v0` (= |V₀|).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialWell {
    pub a: f64,
    pub v0: f64,
    /// Dimensionless strength α = a·sqrt(2·v0).
    pub alpha: f64,
    /// Bound-state estimate Q_B = α/π + 1/2; its integer part counts bound states.
    pub qb: f64,
}

impl PotentialWell {
    pub fn new(a: f64, v0: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return domain(format!("well radius must be positive, got a = {a}"));
        }
        if !(v0.is_finite() && v0 > 0.0) {
            return domain(format!("well depth must be positive, got v0 = {v0}"));
        }
        let alpha = (2.0 * a * a * v0).sqrt();
        Ok(Self {
            a,
            v0,
            alpha,
            qb: alpha / PI + 0.5,
        })
    }

    /// Well of radius `a` with the depth chosen so that its strength is `alpha`.
    pub fn from_alpha(alpha: f64, a: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return domain(format!("strength must be positive, got alpha = {alpha}"));
        }
        if !(a.is_finite() && a > 0.0) {
            return domain(format!("well radius must be positive, got a = {a}"));
        }
        Self::new(a, alpha * alpha / (2.0 * a * a))
    }

    /// Integer part of Q_B.
    pub fn estimated_bound_states(&self) -> usize {
        self.qb.floor() as usize
    }

    /// Internal wave number q for a real external wave number k.
    #[inline]
    pub fn q(&self, k: f64) -> f64 {
        (k * k + 2.0 * self.v0).sqrt()
    }

    /// Same well stretched by `factor`: a′ = factor·a, v0′ = v0/factor².
    /// The strength α is unchanged.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return domain(format!("scaling factor must be positive, got {factor}"));
        }
        Self::new(self.a * factor, self.v0 / (factor * factor))
    }

    /// Real wave number of the `n`-th unitary point (n = 0 is the first):
    /// the n-th odd multiple of π/2 strictly above α, where cos(qa) = 0.
    /// These are the exact positions of the σ_φ maxima.
    pub fn unitary_point(&self, n: usize) -> f64 {
        let mut m = (self.alpha / PI - 0.5).floor().max(0.0);
        if (2.0 * m + 1.0) * PI / 2.0 <= self.alpha {
            m += 1.0;
        }
        let qa = (2.0 * (m + n as f64) + 1.0) * PI / 2.0;
        let q = qa / self.a;
        (q * q - 2.0 * self.v0).max(0.0).sqrt()
    }

    /// All unitary points up to `k_max`, in increasing order.
    pub fn unitary_points(&self, k_max: f64) -> Vec<f64> {
        (0..)
            .map(|n| self.unitary_point(n))
            .take_while(|&k| k <= k_max)
            .collect()
    }
}

/// Same as [`PotentialWell::new`].
pub fn make_well(a: f64, v0: f64) -> Result<PotentialWell> {
    PotentialWell::new(a, v0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_strengths() {
        let w = make_well(2.4, 10.0).unwrap();
        assert!((w.alpha - 10.733).abs() < 5e-4);
        assert!((w.qb - 3.916).abs() < 5e-4);
        let w = make_well(12.0, 10.0).unwrap();
        // the printed 53.665 is truncated, sqrt(2880) = 53.6656
        assert!((w.alpha - 53.665).abs() < 1e-3);
        assert!((w.qb - 17.58).abs() < 5e-3);
        let w = make_well(1.0, 0.125).unwrap();
        assert_eq!(w.alpha, 0.5);
        assert!((w.qb - 0.6592).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(make_well(0.0, 1.0).is_err());
        assert!(make_well(1.0, -1.0).is_err());
        assert!(make_well(f64::NAN, 1.0).is_err());
        assert!(PotentialWell::from_alpha(-1.0, 1.0).is_err());
    }

    #[test]
    fn from_alpha_roundtrip() {
        let w = PotentialWell::from_alpha(39.2505, 2.0).unwrap();
        assert!((w.alpha - 39.2505).abs() < 1e-12);
    }

    #[test]
    fn unitary_points_well_one() {
        let w = make_well(2.4, 10.0).unwrap();
        let pts = w.unitary_points(3.5);
        // qa = 7π/2 is the first odd multiple of π/2 above α = 10.733
        let expect = ((7.0 * PI / 4.8).powi(2) - 20.0).sqrt();
        assert!((pts[0] - expect).abs() < 1e-14);
        assert!((pts[0] - 0.99501).abs() < 1e-5);
        assert!(pts.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn scaled_keeps_alpha() {
        let w = make_well(2.4, 10.0).unwrap();
        let s = w.scaled(5.0).unwrap();
        assert!((s.a - 12.0).abs() < 1e-12);
        assert!((s.v0 - 0.4).abs() < 1e-12);
        assert!((s.alpha - w.alpha).abs() < 1e-12);
    }
}
