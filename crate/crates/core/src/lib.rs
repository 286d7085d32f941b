//! s-wave scattering by an attractive square well.
//!
//! The crate evaluates the cross sections, Wigner–Smith time delay,
//! effective traversal distance l(k) = 2·dφ/dk and trapping probability of
//! the well in closed form, locates the S-matrix poles in the complex
//! k-plane, and assembles per-resonance peak records from real-k scans.
//!
//! Units are ħ = μ = 1.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod peaks;
pub mod phase;
pub mod poles;
pub mod quadrature;
pub mod scattering;
pub mod well;

pub use error::{Error, Result};
pub use experiments::{
    alpha_sweep, figure_data, reference_well, scaling_check, table1, FigureData, ScalingReport, SweepPoint, Table1Row,
    REFERENCE_WELLS,
};
pub use peaks::{
    first_resonance, local_maxima, resonance_report, resonance_report_with, KGrid, Observable, Peak,
    ReportOptions, ResonanceRecord,
};
pub use phase::{phase_full, phase_resonant, PhaseUnwrapper, K_MIN};
pub use poles::{bound_states, denominator, find_poles, PoleK, PoleKind, PoleSearchConfig};
pub use quadrature::{trapping_probability_adaptive, trapping_probability_quadrature};
pub use scattering::{radius_extended, scan, scatter_sample, wavefunction, RadiusExtendedSample, ScatterSample};
pub use well::{make_well, PotentialWell};
