fn main() -> std::process::ExitCode {
    aod::cli::main()
}
