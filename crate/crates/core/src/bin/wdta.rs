fn main() {
    std::process::exit(wdta::cli::main());
}
