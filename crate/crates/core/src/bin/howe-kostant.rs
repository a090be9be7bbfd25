fn main() {
    std::process::exit(howe_kostant::cli::run(std::env::args_os()));
}
