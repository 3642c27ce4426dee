fn main() {
    std::process::exit(ionrwa::cli::main_with_args(std::env::args_os()));
}
