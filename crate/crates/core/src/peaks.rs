//! Local maxima of real-k scans and per-resonance peak records.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::phase::{phase_resonant, K_MIN};
use crate::poles::{find_poles, PoleSearchConfig};
use crate::scattering::{
    sigma_phi, sigma_phi_deficit, time_delay, time_delay_derivative, trapping_probability, traversal_distance,
    traversal_distance_derivative,
};
use crate::well::PotentialWell;

/// Golden-section bracket width at which refinement stops.
pub const REFINE_TOL: f64 = 1e-10;

/// σ_φ within this of 4 counts as reaching the unitary limit.
const UNITARY_SLACK: f64 = 1e-6;

/// Samples of one function on increasing wave numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KGrid {
    pub k_min: f64,
    pub k_max: f64,
    pub samples: Vec<(f64, f64)>,
    pub adaptive: bool,
}

impl KGrid {
    pub fn from_samples(samples: Vec<(f64, f64)>, adaptive: bool) -> Result<Self> {
        if samples.len() < 3 {
            return domain(format!("need at least 3 samples, got {}", samples.len()));
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return domain("grid wave numbers must be strictly increasing");
        }
        let k_min = samples[0].0;
        if k_min < K_MIN {
            return domain(format!("grid starts below k_min = {K_MIN}: {k_min}"));
        }
        Ok(Self {
            k_min,
            k_max: samples[samples.len() - 1].0,
            samples,
            adaptive,
        })
    }

    /// `n` uniformly spaced samples of `f` on [k_min, k_max].
    pub fn sample<F: Fn(f64) -> f64 + Sync>(k_min: f64, k_max: f64, n: usize, f: F) -> Result<Self> {
        if !(k_max > k_min) {
            return domain(format!("empty range [{k_min}, {k_max}]"));
        }
        if n < 3 {
            return domain(format!("need at least 3 samples, got {n}"));
        }
        let h = (k_max - k_min) / (n - 1) as f64;
        let samples = (0..n)
            .into_par_iter()
            .map(|i| {
                let k = if i == n - 1 { k_max } else { k_min + i as f64 * h };
                (k, f(k))
            })
            .collect();
        Self::from_samples(samples, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub k: f64,
    pub value: f64,
    /// Set when the maximum sits on an end of the grid.
    pub boundary: Option<Edge>,
}

impl Peak {
    pub fn is_interior(&self) -> bool {
        self.boundary.is_none()
    }
}

/// Maximizes `f` on [lo, hi] by golden-section search until the bracket is
/// narrower than `tol`. Returns the abscissa of the best point seen.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo < tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

/// Downward zero crossing of `slope` in [lo, hi] by bisection, if bracketed.
fn slope_root<F: Fn(f64) -> f64>(slope: F, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(slope(lo) > 0.0 && slope(hi) < 0.0) {
        return None;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Some(mid);
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Local maxima of the sampled function, each interior one refined by
/// golden-section search on `objective` within its neighbouring samples.
/// `objective` must peak where the sampled function does; `value` gives the
/// reported height.
pub fn local_maxima_by<O, V>(grid: &KGrid, objective: O, value: V) -> Result<Vec<Peak>>
where
    O: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    let s = &grid.samples;
    if s.len() < 3 {
        return domain("need at least 3 samples");
    }
    let mut peaks = Vec::new();
    if s[0].1 > s[1].1 {
        peaks.push(Peak {
            k: s[0].0,
            value: s[0].1,
            boundary: Some(Edge::Lower),
        });
    }
    for i in 1..s.len() - 1 {
        // strict on the left, so a two-sample plateau is reported once
        if s[i].1 > s[i - 1].1 && s[i].1 >= s[i + 1].1 {
            let k = golden_section_max(&objective, s[i - 1].0, s[i + 1].0, REFINE_TOL);
            peaks.push(Peak {
                k,
                value: value(k),
                boundary: None,
            });
        }
    }
    let n = s.len();
    if s[n - 1].1 > s[n - 2].1 {
        peaks.push(Peak {
            k: s[n - 1].0,
            value: s[n - 1].1,
            boundary: Some(Edge::Upper),
        });
    }
    Ok(peaks)
}

/// [`local_maxima_by`] with the sampled function as its own objective.
pub fn local_maxima<F: Fn(f64) -> f64>(grid: &KGrid, f: F) -> Result<Vec<Peak>> {
    local_maxima_by(grid, &f, &f)
}

/// Real-k scattering functions whose peaks make up a resonance record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    TraversalDistance,
    TimeDelay,
    TrappingProbability,
    SigmaPhi,
}

impl Observable {
    pub const ALL: [Observable; 4] = [
        Observable::TraversalDistance,
        Observable::TimeDelay,
        Observable::TrappingProbability,
        Observable::SigmaPhi,
    ];

    pub fn eval(self, well: &PotentialWell, k: f64) -> f64 {
        match self {
            Observable::TraversalDistance => traversal_distance(well, k),
            Observable::TimeDelay => time_delay(well, k),
            Observable::TrappingProbability => trapping_probability(well, k),
            Observable::SigmaPhi => sigma_phi(well, k),
        }
    }

    /// Function handed to the golden-section refinement. For σ_φ this is
    /// −4cos²φ, which has the same maxima but no cancellation near 4.
    pub fn objective(self, well: &PotentialWell, k: f64) -> f64 {
        match self {
            Observable::SigmaPhi => -sigma_phi_deficit(well, k),
            other => other.eval(well, k),
        }
    }

    /// Analytic ∂/∂k where available.
    pub fn slope(self, well: &PotentialWell, k: f64) -> Option<f64> {
        match self {
            Observable::TraversalDistance => Some(traversal_distance_derivative(well, k)),
            Observable::TimeDelay => Some(time_delay_derivative(well, k)),
            _ => None,
        }
    }

    pub fn peaks(self, well: &PotentialWell, k_min: f64, k_max: f64, n: usize) -> Result<Vec<Peak>> {
        let grid = KGrid::sample(k_min, k_max, n, |k| self.eval(well, k))?;
        let mut peaks = local_maxima_by(&grid, |k| self.objective(well, k), |k| self.eval(well, k))?;
        if self.slope(well, k_min).is_some() {
            let dk = (k_max - k_min) / (n - 1) as f64;
            for p in peaks.iter_mut().filter(|p| p.is_interior()) {
                let lo = (p.k - dk).max(k_min);
                let hi = (p.k + dk).min(k_max);
                if let Some(k) = slope_root(|k| self.slope(well, k).unwrap_or(f64::NAN), lo, hi) {
                    p.k = k;
                    p.value = self.eval(well, k);
                }
            }
        }
        Ok(peaks)
    }
}

/// Peak positions of l, τ, P and σ_φ for one resonance, with the nearest
/// S-matrix pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceRecord {
    pub n: usize,
    /// Maximum of l.
    pub k_star: f64,
    /// l decreases away from k_min and has no interior maximum here.
    pub star_boundary: bool,
    /// Maximum of τ; 0 when τ grows without bound toward k → 0.
    pub k_tau: f64,
    pub tau_boundary: bool,
    /// Maximum of P.
    pub k_p: f64,
    /// Maximum of σ_φ (a unitary point).
    pub k_sigma: f64,
    /// φ mod π at k_star.
    pub phi_at_kstar: f64,
    /// l(k_star)/2a.
    pub ell_ratio: f64,
    /// Real part of the attached pole.
    pub kappa: Option<f64>,
    /// Modulus of the attached pole.
    pub modulus: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    /// Initial samples per unit of ka.
    pub density: f64,
    /// Upper limit on grid doublings while the peak counts settle.
    pub max_doublings: usize,
    pub attach_poles: bool,
    /// Stop after this many records.
    pub max_records: Option<usize>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            density: 4096.0,
            max_doublings: 4,
            attach_poles: true,
            max_records: None,
        }
    }
}

struct Scans {
    ell: Vec<Peak>,
    tau: Vec<Peak>,
    trap: Vec<Peak>,
    sigma: Vec<Peak>,
}

impl Scans {
    fn counts(&self) -> [usize; 4] {
        [&self.ell, &self.tau, &self.trap, &self.sigma]
            .map(|p| p.iter().filter(|p| p.is_interior()).count())
    }
}

fn run_scans(well: &PotentialWell, k_max: f64, opts: &ReportOptions) -> Result<Scans> {
    let mut density = opts.density;
    let mut previous: Option<[usize; 4]> = None;
    let mut doublings = 0;
    loop {
        let n = (((k_max - K_MIN) * well.a * density).ceil() as usize).max(64);
        let mut found: Vec<Vec<Peak>> = Observable::ALL
            .par_iter()
            .map(|obs| obs.peaks(well, K_MIN, k_max, n))
            .collect::<Result<_>>()?;
        let sigma = found.pop().unwrap_or_default();
        let trap = found.pop().unwrap_or_default();
        let tau = found.pop().unwrap_or_default();
        let ell = found.pop().unwrap_or_default();
        let scans = Scans { ell, tau, trap, sigma };
        let counts = scans.counts();
        if previous == Some(counts) || doublings >= opts.max_doublings {
            return Ok(scans);
        }
        previous = Some(counts);
        density *= 2.0;
        doublings += 1;
    }
}

/// Interior peak in [lo, hi] nearest to `target`.
fn nearest_in(peaks: &[Peak], lo: f64, hi: f64, target: f64) -> Option<Peak> {
    peaks
        .iter()
        .filter(|p| p.is_interior() && p.k >= lo && p.k <= hi)
        .min_by(|a, b| (a.k - target).abs().total_cmp(&(b.k - target).abs()))
        .copied()
}

fn lower_boundary(peaks: &[Peak]) -> Option<Peak> {
    peaks.iter().find(|p| p.boundary == Some(Edge::Lower)).copied()
}

/// One record per σ_φ maximum reaching the unitary limit in (k_min, k_max].
///
/// The peaks of l, τ and P nearest to each unitary point (within half the
/// spacing to its neighbours) are attached to it. For the first resonance a
/// maximum on the k_min edge stands in when there is no interior one; for τ
/// it is reported as k_tau = 0.
pub fn resonance_report_with(
    well: &PotentialWell,
    k_max: f64,
    opts: &ReportOptions,
) -> Result<Vec<ResonanceRecord>> {
    if !(k_max > K_MIN) || !k_max.is_finite() {
        return domain(format!("k_max must exceed k_min = {K_MIN}, got {k_max}"));
    }
    let scans = run_scans(well, k_max, opts)?;
    let unitary: Vec<f64> = scans
        .sigma
        .iter()
        .filter(|p| p.is_interior() && p.value >= 4.0 - UNITARY_SLACK)
        .map(|p| p.k)
        .collect();

    let poles = if opts.attach_poles && !unitary.is_empty() {
        let mut cfg = PoleSearchConfig::for_well(well, k_max + 0.5);
        cfg.include_bound_states = false;
        find_poles(well, &cfg)?
    } else {
        Vec::new()
    };

    let mut records = Vec::new();
    for (i, &k_sigma) in unitary.iter().enumerate() {
        if opts.max_records.is_some_and(|m| records.len() >= m) {
            break;
        }
        let lo = if i == 0 { K_MIN } else { 0.5 * (unitary[i - 1] + k_sigma) };
        let hi = unitary.get(i + 1).map_or(k_max, |&next| 0.5 * (k_sigma + next));
        let first = i == 0;

        let (k_star, star_boundary) = match nearest_in(&scans.ell, lo, hi, k_sigma) {
            Some(p) => (p.k, false),
            None => match lower_boundary(&scans.ell).filter(|_| first) {
                Some(p) => (p.k, true),
                None => continue,
            },
        };
        let (k_tau, tau_boundary) = match nearest_in(&scans.tau, lo, hi, k_sigma) {
            Some(p) => (p.k, false),
            None => match lower_boundary(&scans.tau).filter(|_| first) {
                Some(_) => (0.0, true),
                None => continue,
            },
        };
        let Some(trap) = nearest_in(&scans.trap, lo, hi, k_sigma) else {
            continue;
        };

        let pole = poles.iter().min_by(|a, b| {
            let da = (a.modulus - k_sigma).abs() + (a.kappa - k_star).abs();
            let db = (b.modulus - k_sigma).abs() + (b.kappa - k_star).abs();
            da.total_cmp(&db)
        });

        records.push(ResonanceRecord {
            n: i + 1,
            k_star,
            star_boundary,
            k_tau,
            tau_boundary,
            k_p: trap.k,
            k_sigma,
            phi_at_kstar: phase_resonant(well, k_star)?.rem_euclid(PI),
            ell_ratio: traversal_distance(well, k_star) / (2.0 * well.a),
            kappa: pole.map(|p| p.kappa),
            modulus: pole.map(|p| p.modulus),
        });
    }
    Ok(records)
}

/// [`resonance_report_with`] with default options.
pub fn resonance_report(well: &PotentialWell, k_max: f64) -> Result<Vec<ResonanceRecord>> {
    resonance_report_with(well, k_max, &ReportOptions::default())
}

/// Record of the first resonance, scanning up to just past the second
/// unitary point.
pub fn first_resonance(well: &PotentialWell, opts: &ReportOptions) -> Result<Option<ResonanceRecord>> {
    let k1 = well.unitary_point(0);
    let k2 = well.unitary_point(1);
    let k_max = k2 + 0.25 * (k2 - k1);
    let opts = ReportOptions {
        max_records: Some(1),
        ..*opts
    };
    Ok(resonance_report_with(well, k_max, &opts)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::well::make_well;

    fn well_one() -> PotentialWell {
        make_well(2.4, 10.0).unwrap()
    }

    #[test]
    fn golden_section_finds_parabola_top() {
        let k = golden_section_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((k - 0.3).abs() < 1e-9);
    }

    #[test]
    fn monotone_samples_have_no_interior_maxima() {
        let grid = KGrid::sample(0.01, 1.0, 100, |k| k * k).unwrap();
        let peaks = local_maxima(&grid, |k| k * k).unwrap();
        assert!(peaks.iter().all(|p| !p.is_interior()));
        assert_eq!(peaks.len(), 1);
        assert_eq!(peaks[0].boundary, Some(Edge::Upper));
    }

    #[test]
    fn degenerate_grids_are_rejected() {
        assert!(KGrid::from_samples(vec![(0.1, 1.0), (0.2, 2.0)], false).is_err());
        assert!(KGrid::from_samples(vec![(0.1, 1.0), (0.1, 2.0), (0.3, 0.0)], false).is_err());
        assert!(KGrid::from_samples(vec![(0.0, 1.0), (0.1, 2.0), (0.3, 0.0)], false).is_err());
        assert!(KGrid::sample(1.0, 0.5, 10, |k| k).is_err());
    }

    #[test]
    fn sigma_phi_peak_well_one() {
        let w = well_one();
        let peaks = Observable::SigmaPhi.peaks(&w, 0.01, 1.5, 6000).unwrap();
        let first = peaks.iter().find(|p| p.is_interior()).unwrap();
        assert!((first.k - 0.9950).abs() < 5e-4);
        assert!((first.k - w.unitary_point(0)).abs() < 1e-8);
    }

    #[test]
    fn time_delay_peak_well_one() {
        let w = well_one();
        let peaks = Observable::TimeDelay.peaks(&w, 0.01, 1.5, 6000).unwrap();
        let first = peaks.iter().find(|p| p.is_interior()).unwrap();
        assert!((first.k - 0.8934).abs() < 5e-4);
    }

    #[test]
    fn report_well_one() {
        let w = well_one();
        let records = resonance_report(&w, 3.5).unwrap();
        let r = records[0];
        assert_eq!(r.n, 1);
        assert!((r.k_star - 0.8983).abs() < 5e-4);
        assert!((r.k_tau - 0.8934).abs() < 5e-4);
        assert!((r.k_p - 0.9990).abs() < 5e-4);
        assert!((r.k_sigma - 0.9950).abs() < 5e-4);
        assert!((r.ell_ratio - 1.0486).abs() < 5e-4);
        assert!((r.phi_at_kstar - 1.33).abs() < 1e-2);
        assert!((r.kappa.unwrap() - 0.8994).abs() < 5e-4);
        assert!((r.modulus.unwrap() - 0.9936).abs() < 5e-4);
        for r in &records {
            assert!(r.k_star <= r.k_sigma);
            assert!(r.ell_ratio >= 1.0 - 1e-12);
            assert!(r.k_p >= r.k_sigma);
            assert!(time_delay(&w, r.k_sigma).abs() < 1e-8);
            assert!((traversal_distance(&w, r.k_star) - 2.0 * w.a > 0.0) == (r.ell_ratio > 1.0));
        }
        for (r, exact) in records.iter().zip(w.unitary_points(3.5)) {
            assert!((r.k_sigma - exact).abs() < 1e-8);
        }
        let gaps: Vec<f64> = records.iter().map(|r| r.k_p - r.k_sigma).collect();
        assert!(gaps.windows(2).all(|g| g[1] > g[0]), "{gaps:?}");
    }

    #[test]
    fn report_threshold_well_has_boundary_tau() {
        let w = PotentialWell::from_alpha(39.2505, 39.2505 / 20f64.sqrt()).unwrap();
        let r = first_resonance(&w, &ReportOptions::default()).unwrap().unwrap();
        assert!(r.tau_boundary);
        assert_eq!(r.k_tau, 0.0);
        assert!(!r.star_boundary);
        assert!((r.k_sigma - 0.1406).abs() < 5e-4);
    }

    #[test]
    fn report_just_above_threshold() {
        let w = PotentialWell::from_alpha(39.3489, 39.3489 / 20f64.sqrt()).unwrap();
        let r = first_resonance(&w, &ReportOptions::default()).unwrap().unwrap();
        assert!((r.k_star - 1.7948).abs() < 5e-4);
        assert!((r.k_sigma - 1.7985).abs() < 5e-4);
        assert!((r.phi_at_kstar - 1.54).abs() < 1e-2);
        assert!(r.ell_ratio >= 1.0);
    }

    #[test]
    fn rejects_bad_range() {
        assert!(resonance_report(&well_one(), 0.0).is_err());
        assert!(resonance_report(&well_one(), f64::INFINITY).is_err());
    }
}
