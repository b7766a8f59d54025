fn main() {
    std::process::exit(brownsig::cli::main_with_args(std::env::args_os()));
}
