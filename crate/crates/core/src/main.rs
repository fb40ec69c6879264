fn main() {
    std::process::exit(snzeros::cli::main_entry());
}
