fn main() {
    std::process::exit(modeq::cli::run());
}
