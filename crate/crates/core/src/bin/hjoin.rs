fn main() {
    std::process::exit(hjoin::cli::run(std::env::args_os()));
}
