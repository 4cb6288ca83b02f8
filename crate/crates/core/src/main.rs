fn main() -> std::process::ExitCode {
    let code = telegraph_occupation::cli::run(std::env::args());
    std::process::ExitCode::from(code as u8)
}
