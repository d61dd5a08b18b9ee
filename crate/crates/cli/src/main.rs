fn main() {
    std::process::exit(multipers::main_with_args(std::env::args_os()));
}
