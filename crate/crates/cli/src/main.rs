use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kink_cli::run(std::env::args_os()))
}
