use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = deltaring_cli::run(std::env::args_os());
    // a closed pipe is not an error worth reporting
    let _ = if code == deltaring_cli::EXIT_PASS || code == deltaring_cli::EXIT_CHECK_FAILED {
        writeln!(std::io::stdout(), "{output}")
    } else {
        writeln!(std::io::stderr(), "{output}")
    };
    ExitCode::from(code as u8)
}
