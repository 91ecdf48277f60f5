fn main() {
    std::process::exit(ird_cli::run(std::env::args_os().collect()));
}
