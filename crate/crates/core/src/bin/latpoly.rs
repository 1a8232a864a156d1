use std::io;
use std::process::ExitCode;

use latpoly::cli;
use latpoly::verify::Formulas;

fn main() -> ExitCode {
    let code = cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
        &Formulas::default(),
    );
    ExitCode::from(code as u8)
}
