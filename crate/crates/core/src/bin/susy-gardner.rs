fn main() -> std::process::ExitCode {
    susy_gardner::cli::main()
}
