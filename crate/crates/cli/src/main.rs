fn main() {
    std::process::exit(conepair_cli::main_with(std::env::args_os()));
}
