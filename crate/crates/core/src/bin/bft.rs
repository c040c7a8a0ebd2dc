fn main() {
    std::process::exit(bft_core::cli::run(std::env::args_os()));
}
