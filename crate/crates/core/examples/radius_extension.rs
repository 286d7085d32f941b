//! Resonant phase, traversal distance and trapping probability evaluated at
//! radii beyond the well edge.

use squarewell::{make_well, radius_extended};

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(2.4, 10.0)?;
    let k = 0.8983;
    for r in [2.4, 3.0, 4.8, 9.6] {
        let s = radius_extended(&well, k, r)?;
        println!("r = {:<4} phi_r = {:>8.5}  l_r = {:>8.4}  P_r = {:.5}", s.r, s.phi_r, s.ell_r, s.p_r);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
