fn main() {
    std::process::exit(bichrom::cli::run());
}
