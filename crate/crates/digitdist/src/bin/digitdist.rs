fn main() {
    std::process::exit(digitdist::cli::run_from_args(std::env::args()));
}
