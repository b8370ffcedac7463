use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = thinloop_cli::run(std::env::args_os());
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", report.render());
    ExitCode::from(report.exit_code as u8)
}
