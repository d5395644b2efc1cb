fn main() {
    std::process::exit(skewscore::cli::main());
}
