//! Peak positions of l, τ, P and σ_φ for every resonance of Well I below k = 3.5.

use squarewell::{make_well, resonance_report};

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(2.4, 10.0)?;
    println!("{:>2} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>7} {:>6}", "n", "k*", "k_tau", "k_P", "k_sigma", "kappa", "|K|", "l/2a", "phi");
    for r in resonance_report(&well, 3.5)? {
        println!(
            "{:>2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>7.4} {:>6.3}",
            r.n,
            r.k_star,
            r.k_tau,
            r.k_p,
            r.k_sigma,
            r.kappa.unwrap_or(f64::NAN),
            r.modulus.unwrap_or(f64::NAN),
            r.ell_ratio,
            r.phi_at_kstar
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
