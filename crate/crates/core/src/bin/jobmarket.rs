fn main() {
    std::process::exit(jobmarket::cli::run(std::env::args_os()));
}
