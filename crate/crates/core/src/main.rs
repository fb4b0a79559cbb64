fn main() {
    std::process::exit(evonet::cli::main_with_args(std::env::args_os()));
}
