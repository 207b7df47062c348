fn main() {
    std::process::exit(flatmod_cli::run(std::env::args_os()));
}
