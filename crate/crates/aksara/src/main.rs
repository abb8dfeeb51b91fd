fn main() {
    std::process::exit(aksara::cli::main_with_args(std::env::args_os()));
}
