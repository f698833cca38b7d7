fn main() {
    std::process::exit(qudit_coho::cli::run(std::env::args_os()));
}
