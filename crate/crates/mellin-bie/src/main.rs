fn main() {
    std::process::exit(mellin_bie::cli_harness::main_with_args(std::env::args_os()));
}
