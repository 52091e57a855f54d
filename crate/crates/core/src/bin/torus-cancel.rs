fn main() {
    std::process::exit(torus_cancel::cli::run(std::env::args_os()));
}
