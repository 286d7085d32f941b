//! Resonance poles and bound states of Well I in the complex k-plane.

use squarewell::{find_poles, make_well, PoleKind, PoleSearchConfig};

pub fn run_example() -> squarewell::Result<()> {
    let well = make_well(2.4, 10.0)?;
    let cfg = PoleSearchConfig::for_well(&well, 4.0);
    for p in find_poles(&well, &cfg)? {
        let tag = match p.kind {
            PoleKind::Bound => "bound",
            PoleKind::Resonance => "resonance",
        };
        println!(
            "{tag:>9}  k = {:>9.6} {:+.6}i   |K| = {:.6}   residual {:.1e}",
            p.value.re, p.value.im, p.modulus, p.residual
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
