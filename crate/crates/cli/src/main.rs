use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let output = moutard_cli::run_args(std::env::args_os());
    let _ = std::io::stdout().write_all(&output.stdout);
    let _ = std::io::stderr().write_all(&output.stderr);
    ExitCode::from(output.code as u8)
}
