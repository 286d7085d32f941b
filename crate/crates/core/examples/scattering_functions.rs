//! Cross sections, time delay, traversal distance and trapping probability of
//! Well I at a handful of wave numbers.

use squarewell::{make_well, scan};

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(2.4, 10.0)?;
    println!("well: a = {}, |V0| = {}, alpha = {:.4}, Q_B = {:.4}", well.a, well.v0, well.alpha, well.qb);
    let ks = [0.05, 0.25, 0.5, 0.8983, 0.99501, 1.5, 2.5];
    println!("{:>8} {:>10} {:>10} {:>8} {:>8} {:>8} {:>8}", "k", "tau", "l", "P", "sigma", "sig_phi", "phi");
    for s in scan(&well, &ks)? {
        println!(
            "{:>8.5} {:>10.4} {:>10.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            s.k, s.tau, s.ell, s.p_trap, s.sigma, s.sigma_phi, s.phi
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
