fn main() {
    std::process::exit(iterdom::cli::cli_main(std::env::args_os()));
}
