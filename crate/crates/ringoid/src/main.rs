use std::process::ExitCode;

fn main() -> ExitCode {
    ringoid::cli::main()
}
