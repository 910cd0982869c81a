fn main() {
    std::process::exit(bott::cli::run());
}
