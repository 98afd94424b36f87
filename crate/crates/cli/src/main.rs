use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (text, code) = kuniform_cli::run_args(std::env::args_os());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    ExitCode::from(code)
}
