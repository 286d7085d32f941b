//! Driving the command-line interface in-process and capturing its CSV.

pub fn run_example() -> squarewell::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = squarewell::cli::run_with(
        ["squarewell", "report", "--a", "2.4", "--v0", "10", "--kmax", "2", "--digits", "6"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    if code != 0 {
        return Err(squarewell::Error::Numerical(format!("exit code {code}")));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
