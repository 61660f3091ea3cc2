fn main() {
    std::process::exit(lcalc::cli::run(std::env::args_os()));
}
