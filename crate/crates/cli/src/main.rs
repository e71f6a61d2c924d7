fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(chd_cli::dispatch(&argv));
}
