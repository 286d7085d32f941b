//! First-resonance records of the seven reference wells as JSON.

pub fn run_example() -> squarewell::Result<()> {
    let rows = squarewell::table1()?;
    println!("{}", serde_json::to_string_pretty(&rows).expect("finite values"));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
