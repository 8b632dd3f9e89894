use std::process::ExitCode;

fn main() -> ExitCode {
    ntukit::cli::main()
}
