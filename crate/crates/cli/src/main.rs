use clap::Parser;
use ladm_cli::{execute, write_output, Cli};

fn main() {
    let cli = Cli::parse();
    let result = execute(cli.command).and_then(|(text, out)| write_output(&text, out.as_deref()));
    if let Err(e) = result {
        eprintln!("ladm: {e}");
        std::process::exit(e.exit_code());
    }
}
