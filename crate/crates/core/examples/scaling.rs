//! Stretching a well by f (a → f·a, |V0| → |V0|/f²) keeps α and maps every
//! resonance to k/f. Well I stretched by 5 is Well III.

use squarewell::peaks::{first_resonance, ReportOptions};
use squarewell::{make_well, scaling_check};

pub fn run_example() -> squarewell::Result<()> {
    let one = make_well(2.4, 10.0)?;
    let report = scaling_check(&one, 5.0)?;
    println!("{report:#?}");
    println!("law holds: {}", report.holds(1e-10, 1e-8));

    let opts = ReportOptions::default();
    let r1 = first_resonance(&one, &opts)?.expect("resonance");
    let r3 = first_resonance(&one.scaled(5.0)?, &opts)?.expect("resonance");
    println!("k*:  {:.10} / 5 = {:.10}  vs {:.10}", r1.k_star, r1.k_star / 5.0, r3.k_star);
    println!("l/2a: {:.10} vs {:.10}", r1.ell_ratio, r3.ell_ratio);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
