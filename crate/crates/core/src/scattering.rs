//! Closed-form s-wave scattering functions of the square well at real k.
//!
//! Inside the well ψ = A·sin(qr); outside ψ = e^{−ikr} + S·e^{ikr} with
//! S = −e^{2iθ} and θ = φ − ka. Everything here is evaluated analytically;
//! the only numerical step is the phase unwrapping in [`crate::phase`].

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::phase::{PhaseUnwrapper, K_MIN};
use crate::well::PotentialWell;

/// Every scattering function at one real wave number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatterSample {
    pub k: f64,
    pub q: f64,
    /// Full phase shift θ = φ − ka, continuous branch.
    pub theta: f64,
    /// Resonant phase shift φ, continuous branch.
    pub phi: f64,
    /// Unscaled s-wave cross section (4π/k²)·sin²θ.
    pub sigma: f64,
    /// 4·sin²θ.
    pub sigma_theta: f64,
    /// 4·sin²φ.
    pub sigma_phi: f64,
    /// Wigner–Smith time delay.
    pub tau: f64,
    /// Effective traversal distance l = 2·dφ/dk.
    pub ell: f64,
    pub p_trap: f64,
    /// Relative intensity |A|² inside the well.
    pub a2: f64,
    /// Reaction function R₀ = tan(qa)/q; infinite where cos(qa) = 0.
    pub r0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusExtendedSample {
    pub r: f64,
    pub phi_r: f64,
    pub ell_r: f64,
    pub p_r: f64,
}

pub(crate) fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        domain(format!("wave number must be positive, got k = {k}"))
    }
}

/// |A|² = 4(ka)² / ((ka)² + α²cos²(qa)).
#[inline]
pub fn relative_intensity(well: &PotentialWell, k: f64) -> f64 {
    let ka = k * well.a;
    let c = (well.q(k) * well.a).cos();
    4.0 * ka * ka / (ka * ka + well.alpha * well.alpha * c * c)
}

/// σ_φ = |A|²·sin²(qa) = 4·sin²φ.
#[inline]
pub fn sigma_phi(well: &PotentialWell, k: f64) -> f64 {
    let s = (well.q(k) * well.a).sin();
    relative_intensity(well, k) * s * s
}

/// 4 − σ_φ = 4·cos²φ, computed without cancellation near the unitary limit.
#[inline]
pub fn sigma_phi_deficit(well: &PotentialWell, k: f64) -> f64 {
    let q = well.q(k);
    let (s, c) = (q * well.a).sin_cos();
    let qc = q * c;
    let ks = k * s;
    4.0 * qc * qc / (qc * qc + ks * ks)
}

/// P(k) = (|A|²/2)·(1 − sin(2qa)/2qa).
#[inline]
pub fn trapping_probability(well: &PotentialWell, k: f64) -> f64 {
    let qa2 = 2.0 * well.q(k) * well.a;
    0.5 * relative_intensity(well, k) * (1.0 - qa2.sin() / qa2)
}

/// l(k) = 2a·(|A|²/4)·(1 + (2|V₀|/k²)·sin(2qa)/2qa).
#[inline]
pub fn traversal_distance(well: &PotentialWell, k: f64) -> f64 {
    let qa2 = 2.0 * well.q(k) * well.a;
    let a2 = relative_intensity(well, k);
    0.5 * well.a * a2 * (1.0 + 2.0 * well.v0 / (k * k) * qa2.sin() / qa2)
}

/// ∂l/∂k, differentiating φ = atan2(k sin qa, q cos qa) twice.
pub fn traversal_distance_derivative(well: &PotentialWell, k: f64) -> f64 {
    let a = well.a;
    let q = well.q(k);
    let (su, cu) = (q * a).sin_cos();
    let r = k / q;
    let s = k * su;
    let c = q * cu;
    let ds = su + a * k * r * cu;
    let dc = r * cu - a * k * su;
    let d2s = a * cu * (3.0 * r - r * r * r) - a * a * k * r * r * su;
    let d2c = (q * q - k * k) / (q * q * q) * cu - a * (r * r + 1.0) * su - a * a * k * r * cu;
    let num = c * ds - s * dc;
    let den = s * s + c * c;
    let dnum = c * d2s - s * d2c;
    let dden = 2.0 * (s * ds + c * dc);
    2.0 * (dnum * den - num * dden) / (den * den)
}

/// ∂τ/∂k.
pub fn time_delay_derivative(well: &PotentialWell, k: f64) -> f64 {
    (k * traversal_distance_derivative(well, k) - (traversal_distance(well, k) - 2.0 * well.a)) / (k * k)
}

/// τ(k) = (l − 2a)/k.
#[inline]
pub fn time_delay(well: &PotentialWell, k: f64) -> f64 {
    (traversal_distance(well, k) - 2.0 * well.a) / k
}

/// R₀ = ψ/ψ′ at r = a, i.e. tan(qa)/q.
#[inline]
pub fn reaction_function(well: &PotentialWell, k: f64) -> f64 {
    let q = well.q(k);
    (q * well.a).tan() / q
}

/// ∂R₀/∂k, using dq/dk = k/q.
#[inline]
pub fn reaction_function_derivative(well: &PotentialWell, k: f64) -> f64 {
    let q = well.q(k);
    let (s, c) = (q * well.a).sin_cos();
    (k / q) * (well.a / (q * c * c) - s / (c * q * q))
}

/// l(k) = 2(R₀ + kR₀′)/(1 + (kR₀)²). Diverges term by term where cos(qa) = 0.
pub fn traversal_distance_from_reaction(well: &PotentialWell, k: f64) -> f64 {
    let r0 = reaction_function(well, k);
    let dr0 = reaction_function_derivative(well, k);
    2.0 * (r0 + k * dr0) / (1.0 + (k * r0) * (k * r0))
}

/// Interior amplitude A = −2i(k/q)e^{−ika} / (cos qa − i(k/q) sin qa).
pub fn interior_amplitude(well: &PotentialWell, k: f64) -> Complex64 {
    let q = well.q(k);
    let (s, c) = (q * well.a).sin_cos();
    let ratio = k / q;
    let num = Complex64::new(0.0, -2.0 * ratio) * Complex64::from_polar(1.0, -k * well.a);
    num / Complex64::new(c, -ratio * s)
}

/// S = −e^{−2ika}·(cos qa + i(k/q) sin qa)/(cos qa − i(k/q) sin qa).
pub fn s_matrix(well: &PotentialWell, k: f64) -> Complex64 {
    let q = well.q(k);
    let (s, c) = (q * well.a).sin_cos();
    let ratio = k / q;
    -Complex64::from_polar(1.0, -2.0 * k * well.a) * Complex64::new(c, ratio * s)
        / Complex64::new(c, -ratio * s)
}

/// Scattering wave function ψ(k; r), piecewise inside and outside the well.
pub fn wavefunction(well: &PotentialWell, k: f64, r: f64) -> Result<Complex64> {
    check_k(k)?;
    if !(r >= 0.0) || !r.is_finite() {
        return domain(format!("radius must be nonnegative, got r = {r}"));
    }
    if r <= well.a {
        Ok(interior_amplitude(well, k) * (well.q(k) * r).sin())
    } else {
        Ok(Complex64::from_polar(1.0, -k * r) + s_matrix(well, k) * Complex64::from_polar(1.0, k * r))
    }
}

fn assemble(well: &PotentialWell, k: f64, phi: f64) -> ScatterSample {
    let q = well.q(k);
    let theta = phi - k * well.a;
    let st = theta.sin();
    let sp = phi.sin();
    let ell = traversal_distance(well, k);
    ScatterSample {
        k,
        q,
        theta,
        phi,
        sigma: 4.0 * PI / (k * k) * st * st,
        sigma_theta: 4.0 * st * st,
        sigma_phi: 4.0 * sp * sp,
        tau: (ell - 2.0 * well.a) / k,
        ell,
        p_trap: trapping_probability(well, k),
        a2: relative_intensity(well, k),
        r0: reaction_function(well, k),
    }
}

/// All scattering functions at `k`, with φ and θ on the continuous branch.
pub fn scatter_sample(well: &PotentialWell, k: f64) -> Result<ScatterSample> {
    check_k(k)?;
    let phi = PhaseUnwrapper::new(well).advance_to(k)?;
    Ok(assemble(well, k, phi))
}

/// Samples at increasing wave numbers, unwrapping the phase once along the scan.
pub fn scan(well: &PotentialWell, ks: &[f64]) -> Result<Vec<ScatterSample>> {
    if let Some(&bad) = ks.iter().find(|&&k| !(k > 0.0 && k.is_finite())) {
        return domain(format!("wave number must be positive, got k = {bad}"));
    }
    if ks.windows(2).any(|w| w[1] < w[0]) {
        return domain("scan wave numbers must be nondecreasing");
    }
    let mut unwrapper = PhaseUnwrapper::new(well);
    ks.iter()
        .map(|&k| {
            let k = k.max(K_MIN);
            Ok(assemble(well, k, unwrapper.advance_to(k)?))
        })
        .collect()
}

/// φ, l and P evaluated with the matching radius moved out to `r ≥ a`.
///
/// θ does not depend on r, so φ_r = θ + kr, l_r = l_a + 2(r − a), and
/// P_r·r = P_a·a + 2(r − a) − [sin 2φ_r − sin 2φ_a]/k.
pub fn radius_extended(well: &PotentialWell, k: f64, r: f64) -> Result<RadiusExtendedSample> {
    check_k(k)?;
    if !(r >= well.a) || !r.is_finite() {
        return domain(format!("radius must be at least a = {}, got r = {r}", well.a));
    }
    let sample = scatter_sample(well, k)?;
    let phi_r = sample.theta + k * r;
    let p_r = (sample.p_trap * well.a + 2.0 * (r - well.a)
        - ((2.0 * phi_r).sin() - (2.0 * sample.phi).sin()) / k)
        / r;
    Ok(RadiusExtendedSample {
        r,
        phi_r: if r == well.a { sample.phi } else { phi_r },
        ell_r: sample.ell + 2.0 * (r - well.a),
        p_r: if r == well.a { sample.p_trap } else { p_r },
    })
}

#[cfg(test)]
mod tests {
    #[test]
    fn slope_matches_finite_difference() {
        for (a, v0) in [(2.4, 10.0), (12.0, 10.0), (12.0, 0.4), (8.7766786, 10.0)] {
            let w = PotentialWell::new(a, v0).unwrap();
            for i in 1..400 {
                let k = 0.01 * i as f64;
                let h = 1e-5 / a;
                let fd = (traversal_distance(&w, k + h) - traversal_distance(&w, k - h)) / (2.0 * h);
                let an = traversal_distance_derivative(&w, k);
                assert!((fd - an).abs() <= 1e-5 * (1.0 + an.abs()), "a={a} k={k}: {fd} vs {an}");
                let fd_tau = (time_delay(&w, k + h) - time_delay(&w, k - h)) / (2.0 * h);
                let an_tau = time_delay_derivative(&w, k);
                assert!((fd_tau - an_tau).abs() <= 1e-5 * (1.0 + an_tau.abs()));
            }
        }
    }

    use super::*;
    use crate::quadrature::{trapping_probability_adaptive, trapping_probability_within};
    use crate::well::make_well;
    use proptest::prelude::*;

    fn well_one() -> PotentialWell {
        make_well(2.4, 10.0).unwrap()
    }

    #[test]
    fn unitary_point_well_one() {
        let w = well_one();
        let k = w.unitary_points(1.5)[0];
        let s = scatter_sample(&w, k).unwrap();
        assert!((s.sigma_phi - 4.0).abs() < 1e-10);
        assert!((s.ell - 4.8).abs() < 1e-10);
        assert!(s.tau.abs() < 1e-10);
        assert!((s.a2 - 4.0).abs() < 1e-10);
        assert!(s.r0.abs() > 1e10);
    }

    #[test]
    fn traversal_ratio_at_first_peak() {
        let w = well_one();
        let s = scatter_sample(&w, 0.8983).unwrap();
        assert!((s.ell / (2.0 * w.a) - 1.0486).abs() < 5e-4);
    }

    #[test]
    fn trapping_identity_at_half() {
        let w = well_one();
        let s = scatter_sample(&w, 0.5).unwrap();
        let resid = w.a * s.p_trap - (s.ell - (2.0 * s.phi).sin() / s.k);
        assert!(resid.abs() < 1e-10);
        let quad = trapping_probability_adaptive(&w, 0.5).unwrap();
        assert!((quad - s.p_trap).abs() < 1e-10);
    }

    #[test]
    fn domain_errors() {
        let w = well_one();
        assert!(scatter_sample(&w, 0.0).is_err());
        assert!(scatter_sample(&w, -0.3).is_err());
        assert!(wavefunction(&w, 0.5, -1.0).is_err());
        assert!(wavefunction(&w, 0.0, 1.0).is_err());
        assert!(radius_extended(&w, 0.5, 2.0).is_err());
        assert!(scan(&w, &[0.5, 0.4]).is_err());
    }

    #[test]
    fn boundary_density_equals_sigma_phi() {
        let w = well_one();
        for k in [0.1, 0.5, 0.8983, 0.99501, 2.0, 3.3] {
            let psi = wavefunction(&w, k, w.a).unwrap();
            assert!((psi.norm_sqr() - sigma_phi(&w, k)).abs() < 1e-12);
        }
        let k = w.unitary_points(1.5)[0];
        assert!((wavefunction(&w, k, w.a).unwrap().norm_sqr() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn wavefunction_is_continuous_at_edge() {
        let w = well_one();
        let a = w.a;
        let inside = interior_amplitude(&w, 0.5) * (w.q(0.5) * a).sin();
        let outside = Complex64::from_polar(1.0, -0.5 * a)
            + s_matrix(&w, 0.5) * Complex64::from_polar(1.0, 0.5 * a);
        assert!((inside - outside).norm() < 1e-12);
        let below = wavefunction(&w, 0.5, a * (1.0 - 1e-15)).unwrap();
        let above = wavefunction(&w, 0.5, a * (1.0 + 1e-15)).unwrap();
        assert!((below - above).norm() < 1e-12);
    }

    #[test]
    fn small_k_trapping_vanishes() {
        let w = well_one();
        assert!(trapping_probability(&w, 1e-4) < 1e-6);
    }

    #[test]
    fn radius_identity_case() {
        let w = well_one();
        let base = scatter_sample(&w, 0.7).unwrap();
        let ext = radius_extended(&w, 0.7, w.a).unwrap();
        assert_eq!(ext.phi_r, base.phi);
        assert_eq!(ext.p_r, base.p_trap);
        assert_eq!(ext.ell_r, base.ell);
    }

    #[test]
    fn radius_extension_matches_quadrature() {
        let w = well_one();
        let ext = radius_extended(&w, 0.5, 2.0 * w.a).unwrap();
        let direct = trapping_probability_within(&w, 0.5, 2.0 * w.a).unwrap();
        assert!((ext.p_r - direct).abs() < 1e-9, "{} vs {}", ext.p_r, direct);
    }

    #[test]
    fn radius_extension_traversal_offset() {
        let w = well_one();
        let ext = radius_extended(&w, 0.8983, 3.0).unwrap();
        let base = scatter_sample(&w, 0.8983).unwrap();
        assert!((ext.ell_r - base.ell - 1.2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn sample_invariants(k in 1e-3f64..10.0, a in 0.5f64..12.0, v0 in 0.1f64..20.0) {
            let w = make_well(a, v0).unwrap();
            let s = scatter_sample(&w, k).unwrap();
            prop_assert!((s.q * s.q - (k * k + 2.0 * v0)).abs() < 1e-9 * s.q * s.q);
            prop_assert!((s.sigma_theta - 4.0 * s.theta.sin().powi(2)).abs() < 1e-12);
            prop_assert!((s.sigma - 4.0 * PI / (k * k) * s.theta.sin().powi(2)).abs() <= 1e-12 * s.sigma.max(1.0));
            prop_assert!((s.sigma_phi - sigma_phi(&w, k)).abs() < 1e-10);
            prop_assert!((0.0..=4.0 + 1e-12).contains(&s.sigma_phi));
            prop_assert!(s.a2 > 0.0 && s.a2 <= 4.0 + 1e-12);
            prop_assert!(s.p_trap >= 0.0);
            prop_assert!((s.tau - (s.ell - 2.0 * a) / k).abs() <= 1e-12 * s.tau.abs().max(1.0));
            let resid = a * s.p_trap - (s.ell - (2.0 * s.phi).sin() / k);
            prop_assert!(resid.abs() < 1e-10 * (1.0 + s.ell.abs()), "residual {}", resid);
            prop_assert!((s_matrix(&w, k).norm() - 1.0).abs() < 1e-12);
            let s_theta = -Complex64::from_polar(1.0, 2.0 * s.theta);
            prop_assert!((s_matrix(&w, k) - s_theta).norm() < 1e-9);
        }

        #[test]
        fn deficit_complements_sigma_phi(k in 1e-3f64..10.0, a in 0.5f64..12.0, v0 in 0.1f64..20.0) {
            let w = make_well(a, v0).unwrap();
            prop_assert!((sigma_phi(&w, k) + sigma_phi_deficit(&w, k) - 4.0).abs() < 1e-12);
        }

        #[test]
        fn radius_extension_invariants(k in 0.05f64..5.0, dr in 0.0f64..10.0) {
            let w = well_one();
            let r = w.a + dr;
            let base = scatter_sample(&w, k).unwrap();
            let ext = radius_extended(&w, k, r).unwrap();
            prop_assert!((ext.phi_r - (base.theta + k * r)).abs() < 1e-12 * (1.0 + ext.phi_r.abs()));
            prop_assert!((ext.ell_r - base.ell - 2.0 * dr).abs() < 1e-12 * (1.0 + ext.ell_r.abs()));
            let lhs = ext.p_r * r;
            let rhs = base.p_trap * w.a + 2.0 * dr - ((2.0 * ext.phi_r).sin() - (2.0 * base.phi).sin()) / k;
            prop_assert!((lhs - rhs).abs() < 1e-10);
            prop_assert!(ext.p_r >= -1e-12);
        }
    }
}
