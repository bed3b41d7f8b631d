fn main() {
    std::process::exit(twophase::cli::cli_main(std::env::args_os()));
}
