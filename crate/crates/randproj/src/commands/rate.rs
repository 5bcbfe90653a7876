use randproj_core::{RateEngine, RateProfile};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::io::{fmt_ext, fmt_f64, Num, Output};
use crate::RayonExecutor;

pub const DEFAULT_POINTS: usize = 200;

/// Table of `Ψ*` on `[0, u_max]`, with the recession slope and the value at it.
pub fn rate(config: &mut RunConfig) -> Result<Output, CliError> {
    let nu = config.require_nu()?;
    let engine = RateEngine::new(nu);
    let u_max = *config.u_max.get_or_insert(RateProfile::default_u_max(&engine));
    let points = *config.points.get_or_insert(DEFAULT_POINTS);
    if points < 2 {
        return Err(CliError::config("points must be at least 2"));
    }
    let profile = RateProfile::build_with(&engine, u_max, points, &RayonExecutor)?;

    let mut out = Output::new(vec!["u", "psi_star", "finite_flag"]);
    out.note("nu", profile.nu.clone());
    out.note("recession_slope", fmt_ext(profile.recession_slope));
    if let Some(b) = profile.boundary_value {
        out.note("boundary_value", fmt_ext(b));
    }
    for &(u, v) in &profile.conjugate_table {
        out.rows.push(vec![fmt_f64(u), fmt_ext(v), v.is_finite().to_string()]);
    }
    out.json = json!({
        "nu": profile.nu,
        "recession_slope": Num(profile.recession_slope),
        "boundary_value": profile.boundary_value.map(Num),
        "boundary_eval_points": profile.boundary_eval_points,
        "boundary_cap": profile.boundary_cap,
        "table": profile.conjugate_table.iter()
            .map(|&(u, v)| json!({ "u": u, "psi_star": Num(v), "finite_flag": v.is_finite() }))
            .collect::<Vec<_>>(),
        "psi": profile.psi_table.iter().map(|&(s, p)| json!({ "s": s, "psi": p })).collect::<Vec<_>>(),
    });
    Ok(out)
}
