fn main() {
    std::process::exit(msk::run(std::env::args_os()));
}
