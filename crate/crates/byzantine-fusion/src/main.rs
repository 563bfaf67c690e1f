use std::process::ExitCode;

fn main() -> ExitCode {
    match byzantine_fusion::cli::run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("byzantine-fusion: {err}");
            ExitCode::FAILURE
        }
    }
}
