fn main() {
    std::process::exit(octa::cli::main(std::env::args_os()));
}
