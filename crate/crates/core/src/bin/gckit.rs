fn main() {
    std::process::exit(gckit::cli::main_with_args(std::env::args_os()));
}
