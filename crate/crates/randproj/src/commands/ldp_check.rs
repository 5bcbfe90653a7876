use randproj_core::ldp::{enumeration_size, rate_convergence_scan, Estimator, LdpRow, ScanConfig, ENUMERATION_BUDGET};
use randproj_core::ExtendedReal;
use serde::Serialize;
use serde_json::json;

use super::median_ext;
use crate::config::{parse_region, RunConfig};
use crate::error::CliError;
use crate::io::{fmt_ext, fmt_f64, Num, Output};
use crate::RayonExecutor;

pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Serialize)]
struct JsonRow {
    n: usize,
    estimator: &'static str,
    mu_hat: f64,
    empirical_rate: Num,
    std_err: f64,
    reliable: bool,
    trial: u32,
    samples_or_enum: u128,
    frame_seed: u64,
}

impl From<&LdpRow> for JsonRow {
    fn from(r: &LdpRow) -> Self {
        Self {
            n: r.n,
            estimator: r.estimator.as_str(),
            mu_hat: r.mu_hat,
            empirical_rate: Num(r.empirical_rate),
            std_err: r.std_err,
            reliable: r.reliable,
            trial: r.trial,
            samples_or_enum: r.samples_or_enum,
            frame_seed: r.frame_seed,
        }
    }
}

struct Median {
    n: usize,
    estimator: Estimator,
    mu_hat: f64,
    empirical_rate: ExtendedReal,
    reliable: bool,
}

/// Empirical decay rates of the projected measure of a region against
/// `inf_A Λ*`.
pub fn ldp_check(config: &mut RunConfig) -> Result<Output, CliError> {
    let seed = config.require_seed()?;
    let nu = config.require_nu()?;
    let desc = config.region.clone().ok_or_else(|| CliError::config("--region is required"))?;
    let region = parse_region(&desc, config.d)?;
    config.d = Some(region.dim());
    let n_values = config.n_values()?;
    let samples = *config.samples.get_or_insert(DEFAULT_SAMPLES);
    let trials = *config.trials.get_or_insert(1);
    if config.estimators.is_none() {
        config.estimators = Some(vec![Estimator::McUniform.as_str().into()]);
    }
    let estimators = config.estimator_list()?;

    if estimators.contains(&Estimator::ExactEnum) {
        let atoms = nu
            .atoms()
            .ok_or_else(|| CliError::config("exact_enum needs a finitely supported law"))?
            .len();
        for &n in &n_values {
            let required = enumeration_size(atoms, n);
            if required > ENUMERATION_BUDGET {
                return Err(CliError::Budget(format!(
                    "exact enumeration at n = {n} visits {required} states (budget {ENUMERATION_BUDGET})"
                )));
            }
        }
    }

    let scan = ScanConfig {
        region,
        n_values: n_values.clone(),
        samples,
        master_seed: seed,
        estimators: estimators.clone(),
        trials,
    };
    let report = rate_convergence_scan(&nu, &scan, &RayonExecutor)?;

    let mut medians = Vec::new();
    if trials > 1 {
        for &n in &n_values {
            for &estimator in &estimators {
                let group: Vec<&LdpRow> = report.rows.iter().filter(|r| r.n == n && r.estimator == estimator).collect();
                let mu: Vec<f64> = group.iter().map(|r| r.mu_hat).collect();
                let rate: Vec<ExtendedReal> = group.iter().map(|r| r.empirical_rate).collect();
                medians.push(Median {
                    n,
                    estimator,
                    mu_hat: randproj_core::stats::median(&mu),
                    empirical_rate: median_ext(&rate),
                    reliable: group.iter().all(|r| r.reliable),
                });
            }
        }
    }

    let mut out = Output::new(vec![
        "n",
        "estimator",
        "mu_hat",
        "empirical_rate",
        "std_err",
        "reliable",
        "trial",
        "samples_or_enum",
        "frame_seed",
    ]);
    out.note("nu", report.nu.clone());
    out.note("d", report.d.to_string());
    out.note("region", report.region.to_string());
    out.note("theoretical_rate", fmt_ext(report.theoretical_rate));
    for r in &report.rows {
        out.rows.push(vec![
            r.n.to_string(),
            r.estimator.to_string(),
            fmt_f64(r.mu_hat),
            fmt_ext(r.empirical_rate),
            fmt_f64(r.std_err),
            r.reliable.to_string(),
            r.trial.to_string(),
            r.samples_or_enum.to_string(),
            r.frame_seed.to_string(),
        ]);
    }
    for m in &medians {
        out.rows.push(vec![
            m.n.to_string(),
            m.estimator.to_string(),
            fmt_f64(m.mu_hat),
            fmt_ext(m.empirical_rate),
            String::new(),
            m.reliable.to_string(),
            "median".into(),
            String::new(),
            String::new(),
        ]);
    }
    let mut body = json!({
        "nu": report.nu,
        "d": report.d,
        "region": report.region.to_string(),
        "theoretical_rate": Num(report.theoretical_rate),
        "rows": report.rows.iter().map(JsonRow::from).collect::<Vec<_>>(),
    });
    if trials > 1 {
        body["medians"] = medians
            .iter()
            .map(|m| {
                json!({
                    "n": m.n,
                    "estimator": m.estimator.as_str(),
                    "mu_hat": m.mu_hat,
                    "empirical_rate": Num(m.empirical_rate),
                    "reliable": m.reliable,
                })
            })
            .collect();
    }
    out.json = body;
    Ok(out)
}
