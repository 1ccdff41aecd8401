fn main() {
    std::process::exit(cubecover::cli::run(std::env::args_os()));
}
