use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = std::panic::catch_unwind(|| maslov::cli::run(std::env::args_os()))
        .unwrap_or_else(|_| maslov::cli::Outcome {
            code: 1,
            output: "{\n  \"error\": \"internal error\"\n}\n".into(),
        });
    let mut out = std::io::stdout().lock();
    // broken pipes are not worth a panic
    let _ = out.write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.code as u8)
}
