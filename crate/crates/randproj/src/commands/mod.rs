//! One module per subcommand. Each fills command defaults into the
//! configuration and returns an [`Output`].

mod intrinsic;
mod ldp_check;
mod project;
mod rate;
mod slln;

pub use intrinsic::intrinsic;
pub use ldp_check::ldp_check;
pub use project::project;
pub use rate::rate;
pub use slln::slln;

use randproj_core::stats::median;
use randproj_core::ExtendedReal;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::io::Output;

// stream ids under the master seed
const SLLN_FRAMES: u64 = 0x534c_4c4e;
const GRID_DIRECTIONS: u64 = 0x4752_4944;
const VOLUME_FRAMES: u64 = 0x564f_4c46;
const VOLUME_SUBSETS: u64 = 0x564f_4c53;
const PROJECT_FRAME: u64 = 0x5052_4f4a;

pub fn run(command: Command, config: &mut RunConfig) -> Result<Output, CliError> {
    config.validate()?;
    match command {
        Command::Slln => slln(config),
        Command::Rate => rate(config),
        Command::LdpCheck => ldp_check(config),
        Command::Intrinsic => intrinsic(config),
        Command::Project => project(config),
    }
}

fn median_ext(values: &[ExtendedReal]) -> ExtendedReal {
    let m = median(&values.iter().map(|v| v.to_f64()).collect::<Vec<_>>());
    if m == f64::INFINITY {
        ExtendedReal::PosInfinity
    } else {
        ExtendedReal::Finite(m)
    }
}
