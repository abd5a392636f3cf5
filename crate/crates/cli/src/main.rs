fn main() {
    std::process::exit(pfusion_cli::run_from(std::env::args_os()));
}
