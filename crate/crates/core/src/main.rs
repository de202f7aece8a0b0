fn main() {
    std::process::exit(toric_bezier::cli::run(std::env::args_os()));
}
