fn main() {
    std::process::exit(ffpc::cli::run(std::env::args_os()));
}
