use std::io::Write;

fn main() {
    let out = ade_core::cli::run(std::env::args().skip(1));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
