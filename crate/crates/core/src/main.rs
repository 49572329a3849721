use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = newton_spectrum::cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code as u8)
}
