fn main() {
    std::process::exit(squarewell::cli::run(std::env::args_os()));
}
