fn main() {
    std::process::exit(qunit::cli::run(std::env::args_os()));
}
