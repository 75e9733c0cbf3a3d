use std::io::Write;

fn main() {
    let report = degenlab::cli::run(std::env::args_os());
    print!("{}", report.output);
    eprint!("{}", report.errors);
    std::io::stdout().flush().ok();
    std::process::exit(report.exit_code);
}
