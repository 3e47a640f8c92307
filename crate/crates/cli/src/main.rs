mod args;
mod commands;
mod error;
mod output;
mod verify;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::VerifyAll(a) => verify::verify_all(&a),
        Command::Cf(a) => commands::cf(&a),
        Command::Complexity(a) => commands::complexity(&a),
        Command::Period(a) => commands::period(&a),
        Command::Palindrome(a) => commands::palindrome(&a),
        Command::Patterns(a) => commands::patterns(&a),
        Command::Surjection(a) => commands::surjection(&a),
    };
    if let Err(failure) = result {
        if !matches!(failure, error::Failure::BrokenPipe) {
            eprintln!("tmcf: {failure}");
        }
        std::process::exit(failure.exit_code());
    }
}
