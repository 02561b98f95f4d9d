use std::process::exit;

fn main() {
    exit(ladderpoly_cli::run_main(std::env::args_os()));
}
