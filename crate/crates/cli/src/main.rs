fn main() {
    std::process::exit(wmv_cli::main_with_args(std::env::args_os()));
}
