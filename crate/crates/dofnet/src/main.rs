fn main() {
    std::process::exit(dofnet::cli::main_with_args(std::env::args_os()));
}
