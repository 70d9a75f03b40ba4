use std::io;
use std::process::exit;

fn main() {
    let code = gamekit::cli::run(
        std::env::args(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    exit(code);
}
