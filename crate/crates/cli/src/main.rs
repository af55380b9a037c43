fn main() {
    std::process::exit(robinson_cli::run(std::env::args_os()));
}
