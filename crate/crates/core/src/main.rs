use clap::Parser;

fn main() {
    let cli = corrpoly::cli::Cli::parse();
    std::process::exit(corrpoly::cli::run(cli));
}
