fn main() {
    std::process::exit(kgs::cli::run(std::env::args_os()));
}
