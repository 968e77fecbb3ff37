use std::io;
use std::process::ExitCode;

use ruler_break_cli::{run_cli, NMAX_VAR};

fn main() -> ExitCode {
    let nmax = std::env::var(NMAX_VAR).ok();
    let code = run_cli(
        std::env::args_os(),
        nmax.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}
