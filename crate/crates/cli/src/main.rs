fn main() {
    std::process::exit(asp_sigma::run(std::env::args_os()));
}
