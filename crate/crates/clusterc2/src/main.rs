use clap::Parser;

fn main() {
    let cli = clusterc2::cli::Cli::parse();
    std::process::exit(clusterc2::cli::run(cli));
}
