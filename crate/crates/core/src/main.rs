use std::process::ExitCode;

fn main() -> ExitCode {
    sinest::cli::main_with_args(std::env::args_os())
}
