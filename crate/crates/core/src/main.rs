fn main() -> std::process::ExitCode {
    monodimer::cli::main_with_args(std::env::args_os())
}
