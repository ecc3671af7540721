fn main() {
    std::process::exit(cmax::cli::main_entry());
}
