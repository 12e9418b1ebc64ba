use std::process::ExitCode;

fn main() -> ExitCode {
    let out = reidemeister_cli::run_args(std::env::args_os());
    // clap usage text goes to stderr; JSON reports, including error reports, to stdout
    if out.code == 0 || out.stdout.contains("\"status\"") {
        print!("{}", out.stdout);
    } else {
        eprint!("{}", out.stdout);
    }
    ExitCode::from(out.code as u8)
}
