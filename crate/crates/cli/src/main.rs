fn main() -> std::process::ExitCode {
    hyptest_cli::run(std::env::args_os())
}
