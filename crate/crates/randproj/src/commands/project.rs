use randproj_core::{RngStream, StiefelFrame};
use serde_json::json;

use super::PROJECT_FRAME;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::io::{fmt_f64, Output};

/// Samples one frame and maps `x` through both projections.
pub fn project(config: &mut RunConfig) -> Result<Output, CliError> {
    let seed = config.require_seed()?;
    let x = config.x.clone().ok_or_else(|| CliError::config("--x is required"))?;
    let n = *config.n.get_or_insert(x.len());
    if n != x.len() {
        return Err(CliError::config(format!("x has {} coordinates but n = {n}", x.len())));
    }
    let d = *config.d.get_or_insert(1);
    let mut stream = RngStream::new(seed, PROJECT_FRAME);
    let frame_seed = stream.stream_id();
    let frame = StiefelFrame::sample(&mut stream, d, n)?;
    let uniform = frame.project_uniform(&x)?;
    let gaussian = frame.project_gaussian(&x)?;

    let mut out = Output::new(vec!["coordinate", "uniform", "gaussian"]);
    out.note("frame_seed", frame_seed.to_string());
    for i in 0..d {
        out.rows.push(vec![i.to_string(), fmt_f64(uniform[i]), fmt_f64(gaussian[i])]);
    }
    out.json = json!({ "d": d, "n": n, "frame_seed": frame_seed, "uniform": uniform, "gaussian": gaussian });
    Ok(out)
}
