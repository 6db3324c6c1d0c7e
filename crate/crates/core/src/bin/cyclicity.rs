fn main() {
    std::process::exit(cyclicity::cli::main_with_args(std::env::args().collect()));
}
