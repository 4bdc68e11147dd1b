use std::process::exit;

fn main() {
    exit(tameconv::cli::run(std::env::args_os()));
}
