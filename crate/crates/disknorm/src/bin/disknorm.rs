fn main() {
    std::process::exit(disknorm::cli::run());
}
