fn main() {
    std::process::exit(tribrot::cli::main());
}
