use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
    let (code, out) = trilie::cli::run(&refs);
    if !out.is_empty() {
        println!("{out}");
    }
    ExitCode::from(code as u8)
}
