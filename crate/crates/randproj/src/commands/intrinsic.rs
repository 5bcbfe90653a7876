use randproj_core::stats::median;
use randproj_core::zonotope::limit_intrinsic_volume;
use randproj_core::{Error, Executor, RngStream, StiefelFrame, Zonotope};
use serde::Serialize;
use serde_json::json;

use super::{VOLUME_FRAMES, VOLUME_SUBSETS};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::io::{fmt_f64, Output};
use crate::RayonExecutor;

pub const DEFAULT_MC_SAMPLES: u64 = 100_000;

#[derive(Serialize)]
struct Row {
    n: usize,
    trial: u32,
    frame_seed: u64,
    method: &'static str,
    /// `V_k / n^{k/2}`.
    normalized_volume: f64,
    std_err: f64,
}

/// `V_k(Z_n) / n^{k/2}` per trial next to its limit constant.
pub fn intrinsic(config: &mut RunConfig) -> Result<Output, CliError> {
    let seed = config.require_seed()?;
    let d = *config.d.get_or_insert(2);
    let k = config.k.ok_or_else(|| CliError::config("--k is required"))?;
    if k > d {
        return Err(CliError::config(format!("k = {k} exceeds d = {d}")));
    }
    let trials = *config.trials.get_or_insert(20);
    let n_values = config.n_values()?;
    let method = config.method.get_or_insert_with(|| "auto".into()).clone();
    if !matches!(method.as_str(), "auto" | "exact" | "mc") {
        return Err(CliError::config(format!("unknown method {method:?} (auto, exact, mc)")));
    }
    if method != "exact" {
        config.samples.get_or_insert(DEFAULT_MC_SAMPLES);
    }
    let samples = config.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let limit = limit_intrinsic_volume(d, k)?;

    let mut rows = Vec::new();
    for &n in &n_values {
        let norm = (n as f64).powf(k as f64 / 2.0);
        let per_trial = RayonExecutor.map_indexed(trials as usize, |t| {
            let mut stream = RngStream::new(seed, VOLUME_FRAMES).derive(t as u64).derive(n as u64);
            let frame_seed = stream.stream_id();
            let z = Zonotope::from_frame(&StiefelFrame::sample(&mut stream, d, n)?);
            let exact = match method.as_str() {
                "mc" => None,
                _ => match z.intrinsic_volume_exact(k) {
                    Ok(v) => Some(v),
                    Err(Error::Budget { .. }) if method == "auto" => None,
                    Err(e) => return Err(e.into()),
                },
            };
            let (used, value, se) = match exact {
                Some(v) => ("exact", v, 0.0),
                None => {
                    let mut s = RngStream::new(seed, VOLUME_SUBSETS).derive(t as u64).derive(n as u64);
                    let m = z.intrinsic_volume_mc(k, samples, &mut s)?;
                    ("mc", m.value, m.std_err)
                }
            };
            Ok::<_, CliError>(Row {
                n,
                trial: t as u32,
                frame_seed,
                method: used,
                normalized_volume: value / norm,
                std_err: se / norm,
            })
        });
        for r in per_trial {
            rows.push(r?);
        }
    }

    let medians: Vec<(usize, f64)> = if trials > 1 {
        n_values
            .iter()
            .map(|&n| (n, median(&rows.iter().filter(|r| r.n == n).map(|r| r.normalized_volume).collect::<Vec<_>>())))
            .collect()
    } else {
        Vec::new()
    };

    let mut out = Output::new(vec!["row_type", "n", "trial", "k", "method", "normalized_volume", "std_err", "frame_seed"]);
    out.note("limit_constant", fmt_f64(limit));
    for r in &rows {
        out.rows.push(vec![
            "trial".into(),
            r.n.to_string(),
            r.trial.to_string(),
            k.to_string(),
            r.method.into(),
            fmt_f64(r.normalized_volume),
            fmt_f64(r.std_err),
            r.frame_seed.to_string(),
        ]);
    }
    for &(n, m) in &medians {
        out.rows.push(vec![
            "median".into(),
            n.to_string(),
            String::new(),
            k.to_string(),
            String::new(),
            fmt_f64(m),
            String::new(),
            String::new(),
        ]);
    }
    out.rows.push(vec![
        "limit".into(),
        String::new(),
        String::new(),
        k.to_string(),
        String::new(),
        fmt_f64(limit),
        String::new(),
        String::new(),
    ]);
    out.json = json!({
        "d": d,
        "k": k,
        "limit_constant": limit,
        "rows": rows,
        "medians": medians.iter().map(|&(n, m)| json!({ "n": n, "normalized_volume": m })).collect::<Vec<_>>(),
    });
    Ok(out)
}
