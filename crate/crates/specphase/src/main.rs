fn main() {
    std::process::exit(specphase::cli::main_with_args(std::env::args_os()));
}
