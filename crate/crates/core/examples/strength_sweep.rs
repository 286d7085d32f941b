//! First maximum of l/2a as the strength α grows at a = 1. The ratio never
//! drops below 1 and falls back each time a new bound state appears.

use squarewell::experiments::{alpha_sweep, binding_thresholds, sawtooth_drops};

pub fn run_example() -> squarewell::Result<()> {
    let points = alpha_sweep(5.0, 30.0, 501, 1.0)?;
    let min = points.iter().map(|p| p.ell_ratio_1).fold(f64::INFINITY, f64::min);
    println!("min l/2a over the sweep: {min:.6}");
    let thresholds = binding_thresholds(&points);
    for i in sawtooth_drops(&points) {
        let (p, q) = (&points[i], &points[i + 1]);
        let on_threshold = thresholds.iter().any(|&j| i.abs_diff(j) <= 1);
        println!(
            "drop at alpha {:.2} -> {:.2}: l/2a {:.4} -> {:.4}  (new bound state: {on_threshold})",
            p.alpha, q.alpha, p.ell_ratio_1, q.ell_ratio_1
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
