fn main() {
    std::process::exit(randproj::cli::run(std::env::args_os()));
}
