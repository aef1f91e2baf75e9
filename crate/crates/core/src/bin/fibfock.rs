use std::io::Write;

fn main() {
    let seed = std::env::var(fibfock::cli::SEED_ENV).ok();
    let outcome = fibfock::cli::run(std::env::args_os(), seed.as_deref());
    std::io::stdout().write_all(&outcome.stdout).expect("write stdout");
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
