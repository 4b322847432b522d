use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = diffset::cli::init_threads_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = diffset::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
