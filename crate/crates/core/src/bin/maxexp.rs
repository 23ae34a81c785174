fn main() {
    std::process::exit(max_exposure::cli::run(std::env::args_os()));
}
