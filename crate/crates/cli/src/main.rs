use std::io::Write;

use exceptional_cli::{run, EXIT_BUDGET, EXIT_INPUT};

fn main() {
    let (code, out) = run(std::env::args_os());
    // errors go to stderr, reports (including failed verifications) to stdout
    let _ = if code == EXIT_INPUT || code == EXIT_BUDGET {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    std::process::exit(code);
}
