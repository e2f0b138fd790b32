use std::process::ExitCode;

fn main() -> ExitCode {
    lnec::cli::main_with(std::env::args_os())
}
