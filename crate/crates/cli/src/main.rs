fn main() {
    std::process::exit(apclab::run(std::env::args_os()));
}
