use randproj_core::stats::median;
use randproj_core::{DirectionGrid, Executor, LimitBall, RngStream, StiefelFrame, Zonotope};
use serde::Serialize;
use serde_json::json;

use super::{GRID_DIRECTIONS, SLLN_FRAMES};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::io::{fmt_f64, Output};
use crate::RayonExecutor;

#[derive(Serialize)]
struct Row {
    n: usize,
    trial: u32,
    frame_seed: u64,
    hausdorff: f64,
}

/// Support-function grid for `d`, with `count` directions when given.
pub(crate) fn direction_grid(d: usize, count: Option<usize>, seed: u64) -> Result<DirectionGrid, CliError> {
    let mut stream = RngStream::new(seed, GRID_DIRECTIONS);
    Ok(match (d, count) {
        (_, None) | (1, _) => DirectionGrid::standard(d, &mut stream)?,
        (2, Some(c)) => DirectionGrid::angular(c),
        (3, Some(c)) => DirectionGrid::fibonacci(c),
        (_, Some(c)) => DirectionGrid::random(d, c, &mut stream),
    })
}

/// Hausdorff distance between `n^{-1/2}` times the projected cube and the
/// limit ball, per `(n, trial)`, with medians over trials.
pub fn slln(config: &mut RunConfig) -> Result<Output, CliError> {
    let seed = config.require_seed()?;
    let d = *config.d.get_or_insert(2);
    let trials = *config.trials.get_or_insert(20);
    let n_values = config.n_values()?;
    let grid = direction_grid(d, config.grid, seed)?;
    config.grid = Some(grid.len());
    let ball = LimitBall::new(d);

    let mut rows = Vec::new();
    for &n in &n_values {
        let per_trial = RayonExecutor.map_indexed(trials as usize, |t| {
            let mut stream = RngStream::new(seed, SLLN_FRAMES).derive(t as u64).derive(n as u64);
            let frame_seed = stream.stream_id();
            let frame = StiefelFrame::sample(&mut stream, d, n)?;
            let dist = Zonotope::from_frame(&frame).hausdorff_to_ball(1.0 / (n as f64).sqrt(), &ball, &grid)?;
            Ok::<_, CliError>(Row { n, trial: t as u32, frame_seed, hausdorff: dist })
        });
        for r in per_trial {
            rows.push(r?);
        }
    }

    let medians: Vec<(usize, f64)> = if trials > 1 {
        n_values
            .iter()
            .map(|&n| {
                let v: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.hausdorff).collect();
                (n, median(&v))
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut out = Output::new(vec!["row_type", "n", "trial", "frame_seed", "hausdorff"]);
    out.note("ball_radius", fmt_f64(ball.radius));
    out.note("grid_directions", grid.len().to_string());
    for r in &rows {
        out.rows.push(vec![
            "trial".into(),
            r.n.to_string(),
            r.trial.to_string(),
            r.frame_seed.to_string(),
            fmt_f64(r.hausdorff),
        ]);
    }
    for &(n, m) in &medians {
        out.rows.push(vec!["median".into(), n.to_string(), String::new(), String::new(), fmt_f64(m)]);
    }
    out.json = json!({
        "d": d,
        "ball_radius": ball.radius,
        "grid_directions": grid.len(),
        "rows": rows,
        "medians": medians.iter().map(|&(n, m)| json!({ "n": n, "hausdorff": m })).collect::<Vec<_>>(),
    });
    Ok(out)
}
