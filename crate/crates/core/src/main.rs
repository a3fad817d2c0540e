fn main() {
    std::process::exit(lawson::cli::run(std::env::args_os()));
}
