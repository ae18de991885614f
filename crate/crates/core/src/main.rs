fn main() {
    std::process::exit(linext::cli::run());
}
