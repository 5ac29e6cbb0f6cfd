fn main() {
    std::process::exit(modsums::cli::run(std::env::args_os()));
}
