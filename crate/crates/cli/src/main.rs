fn main() {
    std::process::exit(cauchy_cli::main_with_args(std::env::args_os()));
}
