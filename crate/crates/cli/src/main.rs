fn main() {
    std::process::exit(kb_cli::main_with(std::env::args_os()));
}
