fn main() {
    std::process::exit(univalens::cli::run());
}
