fn main() {
    std::process::exit(illumination::cli::run(std::env::args_os()));
}
