use cm_degen::cli;

fn main() {
    cli::configure_threads();
    std::process::exit(cli::main_with_args(std::env::args_os()));
}
