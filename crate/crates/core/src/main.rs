fn main() {
    std::process::exit(polysurj::cli::run());
}
