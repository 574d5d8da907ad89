fn main() {
    std::process::exit(lsv_core::cli::main_with_args(std::env::args_os()));
}
