fn main() {
    std::process::exit(wavecov::cli::run(std::env::args_os()));
}
