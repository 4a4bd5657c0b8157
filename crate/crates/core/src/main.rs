use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = treelex::cli::Cli::parse();
    let code = treelex::cli::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}
