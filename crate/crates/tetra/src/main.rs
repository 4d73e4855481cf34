fn main() {
    std::process::exit(tetra::cli::run(std::env::args_os()));
}
