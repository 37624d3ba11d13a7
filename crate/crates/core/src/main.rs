fn main() {
    std::process::exit(gunc::cli::run(std::env::args_os()));
}
