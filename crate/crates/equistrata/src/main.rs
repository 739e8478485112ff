fn main() {
    std::process::exit(equistrata::cli::run(std::env::args()));
}
