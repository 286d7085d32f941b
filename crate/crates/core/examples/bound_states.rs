//! Bound states of the seven reference wells against floor(Q_B).

use squarewell::{bound_states, REFERENCE_WELLS};

pub fn run_example() -> squarewell::Result<()> {
    for (label, spec) in REFERENCE_WELLS {
        let well = spec.build()?;
        let kappas = bound_states(&well);
        println!(
            "{label:>3}: alpha = {:>8.4}  Q_B = {:>7.4}  bound states = {:>2}  deepest kappa = {:.5}",
            well.alpha,
            well.qb,
            kappas.len(),
            kappas.iter().cloned().fold(0.0, f64::max)
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
