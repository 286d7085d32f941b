//! Plotting dataset for Well I: every scattering function on a uniform grid
//! plus markers at the l maxima and at the pole real parts.

use squarewell::experiments::{figure_data, sigma_phi_fwhm, MarkerKind};
use squarewell::make_well;

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(2.4, 10.0)?;
    let data = figure_data(&well, 0.01, 3.5, 2048)?;
    println!("{} rows", data.rows.len());
    for m in &data.markers {
        let kind = match m.kind {
            MarkerKind::EllPeak => "l maximum",
            MarkerKind::PoleKappa => "pole kappa",
        };
        println!("{kind:>10} at k = {:.5}", m.k);
    }
    if let Some(w) = sigma_phi_fwhm(&data) {
        println!("width of the first sigma_phi peak: {w:.4}");
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
