fn main() {
    std::process::exit(coxspine::cli::main_with_args());
}
