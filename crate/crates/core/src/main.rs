use clap::Parser;

fn main() {
    let cli = topwav::cli::Cli::parse();
    let code = topwav::cli::run(&cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}
