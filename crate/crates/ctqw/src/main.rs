fn main() {
    std::process::exit(ctqw::cli::run(std::env::args_os()));
}
