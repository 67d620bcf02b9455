fn main() {
    if let Err(err) = biascope_cli::run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
