fn main() {
    std::process::exit(regver::run(std::env::args_os()));
}
