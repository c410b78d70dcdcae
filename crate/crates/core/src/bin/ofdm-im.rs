fn main() {
    std::process::exit(ofdm_im::cli::main_with_args(std::env::args_os()));
}
