fn main() {
    std::process::exit(mub_entropy_cli::dispatch(std::env::args_os()));
}
