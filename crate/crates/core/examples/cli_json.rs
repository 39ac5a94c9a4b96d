//! Drive the command-line front end in process and print its JSON report.

use flexcheck::cli::run_with_args;

fn main() {
    let out = run_with_args(["flexcheck", "--catalog", "su21-cline", "--format", "json", "verdict"]);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    println!("exit code {}", out.code);
}
