use std::process::ExitCode;

use ringline::cli::{run, Env};

fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        Env::from_process(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
