fn main() {
    std::process::exit(zslab::cli::run());
}
