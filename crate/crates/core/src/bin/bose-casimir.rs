use std::process::ExitCode;

fn main() -> ExitCode {
    bose_casimir::cli::run_from(std::env::args_os())
}
