fn main() {
    std::process::exit(dfsl::cli::main_with_args(std::env::args_os()));
}
