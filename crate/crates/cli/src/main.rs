use clap::Parser;
use peirce_cli::{configure_threads, run, Cli, RunConfig, EXIT_USAGE};

fn main() {
    let cli = Cli::parse();
    let code = match configure_threads(std::env::var("PEIRCE_THREADS").ok().as_deref())
        .and_then(|_| RunConfig::from_cli(cli))
    {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}
