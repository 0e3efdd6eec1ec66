fn main() {
    std::process::exit(schlesinger::cli::run(std::env::args_os()));
}
