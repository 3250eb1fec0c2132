fn main() {
    std::process::exit(cobord_cli::run(std::env::args_os()));
}
