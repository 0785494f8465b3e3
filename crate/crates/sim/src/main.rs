use clap::Parser;
use grand_sim::cli::{main_with, Cli};

fn main() {
    let cli = Cli::parse();
    let code = main_with(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
