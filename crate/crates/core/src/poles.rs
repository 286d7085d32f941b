//! Complex-k zeros of the S-matrix denominator D(k) = cos(qa) − i(k/q)·sin(qa).
//!
//! cos(qa) and sin(qa)/q are even in q, so D depends on k only through k²
//! and the principal square root for q is branch-independent.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::scattering::traversal_distance;
use crate::well::PotentialWell;

/// |Im(qa)| above which D is returned multiplied by e^{−|Im(qa)|}.
pub const RESCALE_THRESHOLD: f64 = 30.0;

/// Residual required of a polished zero.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// D(k), possibly rescaled: the true value is `value · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Denominator {
    pub value: Complex64,
    pub derivative: Complex64,
    pub log_scale: f64,
}

impl Denominator {
    pub fn rescaled(&self) -> bool {
        self.log_scale != 0.0
    }
}

/// cos z and sin z multiplied by e^{−shift}, where shift is |Im z| or 0.
fn scaled_trig(z: Complex64, shift: f64) -> (Complex64, Complex64) {
    if shift == 0.0 {
        return (z.cos(), z.sin());
    }
    let (x, y) = (z.re, z.im);
    let decay = (-2.0 * y.abs()).exp();
    let ch = 0.5 * (1.0 + decay);
    let sh = 0.5 * (1.0 - decay) * y.signum();
    let (sx, cx) = x.sin_cos();
    (Complex64::new(cx * ch, -sx * sh), Complex64::new(sx * ch, cx * sh))
}

/// D(k) and dD/dk at complex k.
pub fn denominator(well: &PotentialWell, k: Complex64) -> Denominator {
    let q = (k * k + 2.0 * well.v0).sqrt();
    let qa = q * well.a;
    let shift = if qa.im.abs() > RESCALE_THRESHOLD { qa.im.abs() } else { 0.0 };
    let (c, s) = scaled_trig(qa, shift);
    let i = Complex64::i();
    let ratio = k / q;
    let value = c - i * ratio * s;
    // dD/dk = (dq/dk)(−a sin qa − i(k/q) a cos qa) − i sin qa · d(k/q)/dk
    let dq = ratio;
    let dratio = 2.0 * well.v0 / (q * q * q);
    let derivative = dq * (-well.a * s - i * ratio * well.a * c) - i * s * dratio;
    Denominator {
        value,
        derivative,
        log_scale: shift,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleKind {
    Bound,
    Resonance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleK {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub kappa: f64,
    pub modulus: f64,
    pub kind: PoleKind,
    pub residual: f64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl PoleK {
    fn new(value: Complex64, kind: PoleKind, residual: f64) -> Self {
        Self {
            value,
            kappa: value.re,
            modulus: value.norm(),
            kind,
            residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSearchConfig {
    pub re_max: f64,
    /// Depth of the search below the real axis (negative).
    pub im_min: f64,
    pub grid_nx: usize,
    pub grid_ny: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    /// Also return the bound states on the positive imaginary axis.
    pub include_bound_states: bool,
}

impl Default for PoleSearchConfig {
    fn default() -> Self {
        Self {
            re_max: 4.0,
            im_min: -2.0,
            grid_nx: 64,
            grid_ny: 24,
            newton_tol: 1e-13,
            max_iter: 60,
            dedup_tol: 1e-8,
            include_bound_states: true,
        }
    }
}

impl PoleSearchConfig {
    /// Search rectangle up to `re_max` with a seed grid dense enough for `well`.
    pub fn for_well(well: &PotentialWell, re_max: f64) -> Self {
        let per_unit = (6.0 * well.a).max(16.0);
        Self {
            re_max,
            grid_nx: ((re_max * per_unit).ceil() as usize).max(64),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.re_max > 0.0) {
            return domain(format!("re_max must be positive, got {}", self.re_max));
        }
        if !(self.im_min < 0.0) {
            return domain(format!("im_min must be negative, got {}", self.im_min));
        }
        if self.grid_nx < 8 || self.grid_ny < 8 {
            return domain("pole search grid needs at least 8 nodes per side");
        }
        if !(self.newton_tol > 0.0) || !(self.dedup_tol > 0.0) {
            return domain("newton_tol and dedup_tol must be positive");
        }
        if self.max_iter == 0 {
            return domain("max_iter must be positive");
        }
        Ok(())
    }
}

/// Axis-aligned region of the complex k-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.re_min - slack
            && z.re <= self.re_max + slack
            && z.im >= self.im_min - slack
            && z.im <= self.im_max + slack
    }
}

/// Newton iteration on D from `seed`; returns the zero and its residual.
pub fn polish(well: &PotentialWell, seed: Complex64, tol: f64, max_iter: usize) -> Option<(Complex64, f64)> {
    let mut k = seed;
    for _ in 0..max_iter {
        let d = denominator(well, k);
        if !d.derivative.is_finite() || d.derivative.norm() == 0.0 {
            return None;
        }
        let step = d.value / d.derivative;
        k -= step;
        if !k.is_finite() {
            return None;
        }
        if step.norm() <= tol * k.norm().max(1.0) {
            let residual = denominator(well, k).value.norm();
            return (residual < RESIDUAL_TOL).then_some((k, residual));
        }
    }
    None
}

/// Zeros of D reached by Newton from a uniform grid over `rect` and from the
/// extra `seeds`, deduplicated and kept only if they land inside `rect`.
pub fn find_zeros(
    well: &PotentialWell,
    rect: Rect,
    nx: usize,
    ny: usize,
    seeds: &[Complex64],
    cfg: &PoleSearchConfig,
) -> Vec<(Complex64, f64)> {
    let mut starts: Vec<Complex64> = Vec::with_capacity(nx * ny + seeds.len());
    for i in 0..nx {
        let re = rect.re_min + (i as f64 + 0.5) * (rect.re_max - rect.re_min) / nx as f64;
        for j in 0..ny {
            let im = rect.im_min + (j as f64 + 0.5) * (rect.im_max - rect.im_min) / ny as f64;
            starts.push(Complex64::new(re, im));
        }
    }
    starts.extend_from_slice(seeds);

    let mut found: Vec<(Complex64, f64)> = starts
        .par_iter()
        .filter_map(|&s| polish(well, s, cfg.newton_tol, cfg.max_iter))
        .filter(|(z, _)| rect.contains(*z, 0.0))
        .collect();
    found.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    let mut out: Vec<(Complex64, f64)> = Vec::new();
    for (z, r) in found {
        match out.iter_mut().find(|(w, _)| (*w - z).norm() < cfg.dedup_tol) {
            Some(existing) => {
                if r < existing.1 {
                    *existing = (z, r);
                }
            }
            None => out.push((z, r)),
        }
    }
    out
}

/// Seeds just below the real axis at the local maxima of l(k).
fn traversal_peak_seeds(well: &PotentialWell, re_max: f64) -> Vec<Complex64> {
    let n = ((re_max * well.a * 256.0).ceil() as usize).max(256);
    let h = re_max / n as f64;
    let ell: Vec<f64> = (1..=n).map(|i| traversal_distance(well, i as f64 * h)).collect();
    let mut seeds = Vec::new();
    for i in 1..ell.len() - 1 {
        if ell[i] > ell[i - 1] && ell[i] >= ell[i + 1] {
            let k = (i + 1) as f64 * h;
            for depth in [0.02, 0.1, 0.3, 0.6] {
                seeds.push(Complex64::new(k, -depth));
            }
        }
    }
    seeds
}

/// Resonance poles in Re ∈ (0, re_max], Im ∈ [im_min, 0), plus the bound
/// states when requested, sorted by real part.
pub fn find_poles(well: &PotentialWell, cfg: &PoleSearchConfig) -> Result<Vec<PoleK>> {
    cfg.validate()?;
    let rect = Rect {
        re_min: 0.0,
        re_max: cfg.re_max,
        im_min: cfg.im_min,
        im_max: 0.0,
    };
    let seeds = traversal_peak_seeds(well, cfg.re_max);
    let mut poles: Vec<PoleK> = find_zeros(well, rect, cfg.grid_nx, cfg.grid_ny, &seeds, cfg)
        .into_iter()
        // zeros on the negative imaginary axis are virtual states
        .filter(|(z, _)| z.re > 1e-8 && z.im < 0.0)
        .map(|(z, r)| PoleK::new(z, PoleKind::Resonance, r))
        .collect();

    if cfg.include_bound_states {
        let mut bound: Vec<PoleK> = bound_states(well)
            .into_iter()
            .map(|kappa| {
                let z = Complex64::new(0.0, kappa);
                PoleK::new(z, PoleKind::Bound, denominator(well, z).value.norm())
            })
            .collect();
        bound.sort_by(|a, b| a.value.im.total_cmp(&b.value.im));
        bound.extend(poles);
        poles = bound;
    }
    Ok(poles)
}

/// On k = iκ the denominator is real: D(iκ)·x = x·cos x + sqrt(α² − x²)·sin x
/// with x = qa ∈ (0, α).
fn bound_state_function(alpha: f64, x: f64) -> f64 {
    x * x.cos() + (alpha * alpha - x * x).max(0.0).sqrt() * x.sin()
}

/// κ_b > 0 with D(iκ_b) = 0, by sign-change bracketing in qa and bisection.
/// Sorted from the deepest (largest κ) to the shallowest.
pub fn bound_states(well: &PotentialWell) -> Vec<f64> {
    let alpha = well.alpha;
    let f = |x: f64| bound_state_function(alpha, x);
    let cells = ((alpha / std::f64::consts::PI * 32.0).ceil() as usize).max(64);
    let h = alpha / cells as f64;
    let mut roots = Vec::new();
    let mut lo = h * 1e-6;
    let mut f_lo = f(lo);
    for i in 1..=cells {
        let hi = if i == cells { alpha } else { i as f64 * h };
        let f_hi = f(hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo * f_hi < 0.0 {
            roots.push(bisect(&f, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
        .into_iter()
        .filter(|&x| x < alpha)
        .map(|x| (alpha * alpha - x * x).sqrt() / well.a)
        .filter(|&kappa| kappa > 0.0)
        .collect()
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
