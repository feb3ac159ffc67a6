fn main() {
    std::process::exit(spherical_cli::run(std::env::args_os()));
}
