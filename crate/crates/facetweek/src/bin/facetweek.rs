fn main() -> std::process::ExitCode {
    facetweek::cli::main()
}
