fn main() {
    std::process::exit(indapprox::cli::run(std::env::args_os()));
}
