fn main() {
    std::process::exit(catport::cli::main(std::env::args_os()));
}
