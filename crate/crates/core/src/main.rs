fn main() {
    std::process::exit(sbcheck::cli::run(std::env::args_os()));
}
