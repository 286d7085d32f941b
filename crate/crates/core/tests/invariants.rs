use squarewell::experiments::reference_well;
use squarewell::peaks::{first_resonance, resonance_report, ReportOptions};
use squarewell::poles::{denominator, find_poles, PoleKind, PoleSearchConfig};
use squarewell::scattering::{s_matrix, time_delay, traversal_distance};
use squarewell::{scan, PotentialWell, REFERENCE_WELLS};

fn wells() -> Vec<(&'static str, PotentialWell)> {
    REFERENCE_WELLS.iter().map(|(l, s)| (*l, s.build().unwrap())).collect()
}

#[test]
fn poles_are_zeros_in_the_lower_half_plane() {
    for (label, w) in wells() {
        let cfg = PoleSearchConfig::for_well(&w, 3.0);
        let poles = find_poles(&w, &cfg).unwrap();
        for p in &poles {
            match p.kind {
                PoleKind::Bound => assert!(p.value.re.abs() < 1e-12 && p.value.im > 0.0, "{label}"),
                PoleKind::Resonance => assert!(p.value.im < 0.0 && p.value.re > 0.0, "{label}"),
            }
            assert!(denominator(&w, p.value).value.norm() < 1e-9, "{label} {}", p.value);
        }
        for pair in poles.windows(2) {
            assert!((pair[0].value - pair[1].value).norm() > 1e-6, "{label}: duplicate pole");
        }
    }
}

#[test]
fn s_matrix_is_unimodular_on_the_real_axis() {
    for (_, w) in wells() {
        for i in 1..200 {
            let k = 0.02 * i as f64;
            assert!((s_matrix(&w, k).norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn records_are_ordered_around_the_pole() {
    let opts = ReportOptions::default();
    for (label, w) in wells() {
        let Some(r) = first_resonance(&w, &opts).unwrap() else {
            continue;
        };
        let tol = if label == "I" { 1.5e-3 } else { 1e-3 };
        let (kappa, modulus) = (r.kappa.unwrap(), r.modulus.unwrap());
        assert!((r.k_sigma - modulus).abs() < tol, "{label}: {} vs {modulus}", r.k_sigma);
        assert!(r.ell_ratio >= 1.0, "{label}");
        if label != "V" {
            assert!((r.k_star - kappa).abs() < (r.k_sigma - kappa).abs(), "{label}");
            assert!(r.k_star < r.k_sigma && r.k_tau <= r.k_star + 1e-9, "{label}");
        }
    }
}

#[test]
fn tau_and_ell_vanish_at_every_unitary_point() {
    for (label, w) in wells() {
        for k in w.unitary_points(4.0) {
            assert!(time_delay(&w, k).abs() < 1e-8, "{label} k={k}");
            assert!((traversal_distance(&w, k) - 2.0 * w.a).abs() < 1e-8);
        }
    }
}

#[test]
fn every_record_sits_on_a_unitary_point() {
    let w = reference_well("I").unwrap();
    let records = resonance_report(&w, 3.5).unwrap();
    let unitary = w.unitary_points(3.5);
    assert_eq!(records.len(), unitary.len());
    for (r, k) in records.iter().zip(unitary) {
        assert!((r.k_sigma - k).abs() < 1e-9);
    }
}

#[test]
fn scan_rejects_decreasing_grid() {
    let w = reference_well("II").unwrap();
    assert!(scan(&w, &[0.5, 0.4]).is_err());
    assert!(scan(&w, &[0.1, 0.1, 0.2]).is_ok());
}
