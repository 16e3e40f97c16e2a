fn main() {
    std::process::exit(cone_spanner::cli::cli_main(std::env::args_os()))
}
