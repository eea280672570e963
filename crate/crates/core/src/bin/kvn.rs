fn main() {
    std::process::exit(kvn_core::cli::run_from_env());
}
