fn main() {
    std::process::exit(veronese_witt::cli::main_with_stdio());
}
