use clap::Parser;

fn main() {
    let cli = msph::Cli::parse();
    std::process::exit(msph::run(cli));
}
