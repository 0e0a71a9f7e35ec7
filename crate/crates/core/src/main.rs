fn main() {
    std::process::exit(degsplit::cli::run(std::env::args_os()));
}
