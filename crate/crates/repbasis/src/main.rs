use clap::Parser;

use repbasis::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = run(cli, &mut stdout);
    std::process::exit(code);
}
