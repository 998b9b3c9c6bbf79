use clap::Parser;
use horotile::cli::{run, Args};

fn main() {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => println!("{out}"),
        Err(e) => {
            eprintln!("horotile: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
