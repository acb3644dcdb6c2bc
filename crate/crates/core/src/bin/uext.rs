use std::process::ExitCode;

fn main() -> ExitCode {
    let result = uext::cli::run(std::env::args_os());
    if result.exit_code == 2 {
        eprint!("{}", result.report);
    } else {
        print!("{}", result.report);
    }
    ExitCode::from(result.exit_code as u8)
}
