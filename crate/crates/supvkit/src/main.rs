use std::process::ExitCode;

fn main() -> ExitCode {
    supvkit::cli::run()
}
