fn main() {
    match wordevo_cli::run_cli(std::env::args().skip(1)) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
