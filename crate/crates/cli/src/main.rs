use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(floodlab::run(std::env::args_os()))
}
