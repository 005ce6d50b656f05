fn main() {
    std::process::exit(qndpol::cli::main_with_args(std::env::args_os()));
}
