use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cfdim_cli::run())
}
