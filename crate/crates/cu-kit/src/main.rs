use std::process::ExitCode;

fn main() -> ExitCode {
    cu_kit::cli::main_entry()
}
