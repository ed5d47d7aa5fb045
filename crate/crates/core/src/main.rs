fn main() {
    std::process::exit(biwave::cli::run());
}
