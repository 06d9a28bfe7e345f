use std::process::ExitCode;

use scenario_service::{serve, ServiceConfig};

#[tokio::main]
async fn main() -> ExitCode {
    let config = match ServiceConfig::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("scenario_service: {e}");
            return ExitCode::from(2);
        }
    };
    eprintln!("listening on http://{}", config.addr());
    if let Err(e) = serve(config).await {
        eprintln!("scenario_service: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
