fn main() {
    std::process::exit(trendkit::cli::run(std::env::args_os()));
}
