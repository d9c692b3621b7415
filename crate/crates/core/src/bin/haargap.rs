use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = haargap::cli::run_args(std::env::args_os());
    let text = outcome.text.as_bytes();
    let written = if outcome.exit_code == 0 || outcome.exit_code == 4 {
        std::io::stdout().write_all(text)
    } else {
        std::io::stderr().write_all(text)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code as u8)
}
