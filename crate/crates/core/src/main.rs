use std::io::Write;

fn main() {
    let outcome = euler_factorials::cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(outcome.stdout.as_bytes())
        .expect("write to stdout");
    std::io::stderr()
        .write_all(outcome.stderr.as_bytes())
        .expect("write to stderr");
    std::process::exit(outcome.exit_code);
}
