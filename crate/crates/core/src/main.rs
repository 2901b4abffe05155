use std::io::{self, Write};

fn main() {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let stdout = io::stdout();
    let mut stdout = io::BufWriter::new(stdout.lock());
    let mut stderr = io::stderr();
    let code = lbo::cli::run(std::env::args_os(), &mut stdin, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    drop(stdout);
    std::process::exit(code);
}
