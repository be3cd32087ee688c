use clap::Parser;

fn main() {
    let cli = anyon_bench::cli::Cli::parse();
    if let Err(e) = anyon_bench::run(&cli) {
        if let anyon_bench::BenchError::Io(io) = &e {
            if io.kind() == std::io::ErrorKind::BrokenPipe {
                return;
            }
        }
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
