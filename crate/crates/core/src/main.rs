use std::io::IsTerminal;

use segcalc::cli::{run, Color};

fn main() {
    let color = Color::from_env(std::io::stdout().is_terminal());
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = run(std::env::args_os(), &mut out, &mut err, color);
    std::process::exit(code);
}
