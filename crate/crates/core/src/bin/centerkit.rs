use clap::Parser;

fn main() {
    std::process::exit(centerkit::cli::run(centerkit::cli::Cli::parse()));
}
