use std::process::ExitCode;

fn main() -> ExitCode {
    elliptic_billiards::cli::main_with_args(std::env::args_os())
}
