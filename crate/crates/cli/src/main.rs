use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = edfun_cli::run(std::env::args_os());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.stdout.as_bytes()).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
