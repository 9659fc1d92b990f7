fn main() {
    std::process::exit(spiralcolor::cli::run(std::env::args_os()));
}
