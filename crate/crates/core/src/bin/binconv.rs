fn main() {
    std::process::exit(binconv::cli::run(std::env::args_os()));
}
