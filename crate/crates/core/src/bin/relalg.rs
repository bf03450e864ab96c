fn main() {
    std::process::exit(relalg::cli::main());
}
