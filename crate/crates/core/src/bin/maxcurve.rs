use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = std::env::var(maxcurve::cli::BUDGET_ENV).ok();
    let code = maxcurve::cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut io::stdout(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
