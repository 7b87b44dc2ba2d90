fn main() {
    std::process::exit(corefacial::cli::run(std::env::args_os()));
}
