use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, OutputFormat, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "randproj", version, about = "Random projections of high-dimensional product measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Hausdorff distance of the scaled projected cube to its limit ball
    Slln(Flags),
    /// Rate function table for a coordinate law
    Rate(Flags),
    /// Empirical decay rates of the projected measure of a region
    LdpCheck(Flags),
    /// Normalized intrinsic volumes of the projected cube
    Intrinsic(Flags),
    /// Sample one frame and project a vector
    Project(Flags),
}

impl CliCommand {
    fn split(self) -> (Command, Flags) {
        match self {
            CliCommand::Slln(f) => (Command::Slln, f),
            CliCommand::Rate(f) => (Command::Rate, f),
            CliCommand::LdpCheck(f) => (Command::LdpCheck, f),
            CliCommand::Intrinsic(f) => (Command::Intrinsic, f),
            CliCommand::Project(f) => (Command::Project, f),
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// JSON configuration file; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// gaussian | rademacher | uniform | discrete:<path>
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "n-list", value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub trials: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// half:<u_csv>:<a> | ballc:<r>
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,
    /// Number of directions in the support-function grid
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of points in the rate table
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long = "u-max")]
    pub u_max: Option<f64>,
    /// Comma-separated: mc_uniform, mc_gaussian, exact_enum
    #[arg(long, value_delimiter = ',')]
    pub estimators: Option<Vec<String>>,
    /// Intrinsic volume estimator: auto | exact | mc
    #[arg(long)]
    pub method: Option<String>,
    /// Vector to project, comma-separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

impl Flags {
    fn into_config(self) -> (Option<PathBuf>, RunConfig) {
        let config = RunConfig {
            command: None,
            nu: self.nu,
            d: self.d,
            n: self.n,
            n_list: self.n_list,
            k: self.k,
            samples: self.samples,
            trials: self.trials,
            seed: self.seed,
            region: self.region,
            grid: self.grid,
            points: self.points,
            u_max: self.u_max,
            estimators: self.estimators,
            method: self.method,
            x: self.x,
            out: self.out,
            format: self.format,
        };
        (self.config, config)
    }
}

fn execute(command: Command, flags: Flags) -> Result<(), CliError> {
    let (path, flags) = flags.into_config();
    let file = match path {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    if let Some(c) = file.command {
        if c != command {
            return Err(CliError::config(format!("config file is for `{c}`, not `{command}`")));
        }
    }
    let mut config = file.overlay(flags);
    config.command = Some(command);
    let output = crate::commands::run(command, &mut config)?;
    output.emit(command, &config)
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, flags) = cli.command.split();
    match execute(command, flags) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("randproj: {e}");
            e.exit_code()
        }
    }
}
