fn main() {
    std::process::exit(digraphon::cli::main_with_args(std::env::args_os()));
}
