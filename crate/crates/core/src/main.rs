use clap::Parser;

fn main() {
    let cli = sdslab::cli::Cli::parse();
    match sdslab::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
