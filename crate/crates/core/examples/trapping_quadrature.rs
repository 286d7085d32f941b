//! Closed-form trapping probability against direct integration of |ψ|².

use squarewell::scattering::trapping_probability;
use squarewell::{make_well, trapping_probability_adaptive};

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(12.0, 10.0)?;
    for k in [0.01, 0.3, 0.9915, 0.9952, 2.0, 6.0] {
        let closed = trapping_probability(&well, k);
        let quad = trapping_probability_adaptive(&well, k)?;
        println!("k = {k:<7} P = {closed:.12}  quadrature = {quad:.12}  diff = {:.1e}", (closed - quad).abs());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
