fn main() {
    std::process::exit(partcount::cli::run(std::env::args_os()));
}
