fn main() {
    std::process::exit(ellgrid::cli::main_with_args(std::env::args_os()));
}
