fn main() {
    std::process::exit(surfcut::cli::main_with_args(std::env::args_os()));
}
