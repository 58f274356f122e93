use std::io::Write;
use std::process::ExitCode;

use gctk::limits;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Ok(raw) = std::env::var(limits::SIZE_CAP_ENV) {
        match raw.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => limits::set_face_cap(cap),
            _ => {
                eprintln!("gctk: {} must be a positive integer, got `{raw}`", limits::SIZE_CAP_ENV);
                return ExitCode::from(2);
            }
        }
    }
    let outcome = gctk::cli::run(std::env::args());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
