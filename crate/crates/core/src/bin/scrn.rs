fn main() {
    std::process::exit(scrn::cli::main());
}
