//! The `pensionlab` command line.
//!
//! Subcommands: `project` for one member, `cohort` for heat-map reports, `tables`
//! for published-table reproduction and `serve` for the JSON API.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod project;
pub mod report;
pub mod tables;

use std::io::Write;

use scenario_service::{serve, ServiceConfig};

pub use cli::{Cli, Command};
pub use config::RunConfig;
pub use error::{CliError, Result};

fn cmd_serve(args: &cli::ServeArgs) -> Result<()> {
    let mut config = ServiceConfig::from_env()?;
    if let Some(port) = args.port {
        config.port = port;
    }
    if let Some(host) = args.host {
        config.host = host;
    }
    let runtime = tokio::runtime::Runtime::new()?;
    eprintln!("listening on http://{}", config.addr());
    runtime.block_on(serve(config))?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Project(args) => project::cmd_project(args, out),
        Command::Cohort(args) => report::cmd_cohort(args, out),
        Command::Tables(args) => tables::cmd_tables(args, out),
        Command::Serve(args) => cmd_serve(args),
    }
}
