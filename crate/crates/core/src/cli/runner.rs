//! Dispatch a parsed run configuration and write the CSV/JSON report pair.

use std::path::{Path, PathBuf};

use serde_json::json;

use super::config::{Command, RunConfig};
use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::spectral::GridSpec;
use crate::structure::{dilation_law, kalman_rank, validate_structure};
use crate::verify::{
    maximal_regularity, refinement_study, scaling_experiment, toy_scaling_experiment,
    transport_estimate_with, EstimateReport, GridPolicy, RhsSource, CSV_HEADER,
};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_override: Option<PathBuf>,
    pub budget_override: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    pub message: String,
}

fn write_outputs(
    prefix: &Path,
    csv: &str,
    json_value: &serde_json::Value,
) -> Result<(PathBuf, PathBuf)> {
    if let Some(parent) = prefix.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let csv_path = prefix.with_extension("csv");
    let json_path = prefix.with_extension("json");
    std::fs::write(&csv_path, csv)?;
    std::fs::write(&json_path, format!("{:#}\n", json_value))?;
    Ok((csv_path, json_path))
}

fn reports_csv(reports: &[EstimateReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Execute one run configuration. Writes `<prefix>.csv` and `<prefix>.json`;
/// identical configuration bytes produce identical output bytes.
pub fn run(config: &RunConfig, opts: &RunOptions) -> Result<RunSummary> {
    let prefix: PathBuf = match (&opts.out_override, &config.output) {
        (Some(p), _) => p.clone(),
        (None, Some(s)) => PathBuf::from(s),
        (None, None) => return Err(Error::Config("output: missing".into())),
    };

    let grid_with_budget = |g: &GridSpec| -> GridSpec {
        match opts.budget_override {
            Some(b) => g.clone().with_budget(b),
            None => g.clone(),
        }
    };

    let m = &config.structure;
    match config.command {
        Command::CheckStructure => {
            let report = validate_structure(m);
            let rank = kalman_rank(m);
            let law = dilation_law(m);
            let valid = report.passed();
            let mut csv = String::from("check,passed,detail\n");
            for c in &report.checks {
                csv.push_str(&format!("{},{},{}\n", c.name, c.passed, c.detail.replace(',', ";")));
            }
            csv.push_str(&format!(
                "kalman-rank,{},rank {} of N = {}\n",
                rank == m.n(),
                rank,
                m.n()
            ));
            let message = if valid {
                format!("valid, kalman_rank={rank}")
            } else {
                format!(
                    "invalid: {} (kalman_rank={rank})",
                    report.first_failure().map(|c| c.name.as_str()).unwrap_or("unknown")
                )
            };
            let value = json!({
                "command": "check-structure",
                "structure": m,
                "structure_hash": m.hash(),
                "valid": valid,
                "checks": report.checks,
                "kalman_rank": rank,
                "hypoelliptic": rank == m.n(),
                "dilation": law,
                "message": message,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &csv, &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }

        Command::VerifyTransport => {
            let grid = grid_with_budget(config.required_grid()?);
            let (fields, seed) = config.resolve_fields(&grid)?;
            let exponents = config.parsed_exponents()?;
            let mut reports = Vec::new();
            for u in &fields {
                for (beta, gamma) in &exponents {
                    reports.push(transport_estimate_with(
                        u,
                        m,
                        beta,
                        gamma,
                        &grid,
                        RhsSource::Symbolic,
                        seed,
                    )?);
                }
            }
            let summary: Vec<serde_json::Value> = exponents
                .iter()
                .map(|(beta, gamma)| {
                    let group: Vec<&EstimateReport> = reports
                        .iter()
                        .filter(|r| &r.beta == beta && &r.gamma == gamma)
                        .collect();
                    let sup = group
                        .iter()
                        .filter_map(|r| r.ratio)
                        .fold(f64::NEG_INFINITY, f64::max);
                    let degenerate = group.iter().filter(|r| r.degenerate).count();
                    json!({
                        "beta": beta.to_string(),
                        "gamma": gamma.to_string(),
                        "s": group.first().map(|r| r.s.to_string()),
                        "sup_ratio": if sup.is_finite() { Some(sup) } else { None },
                        "instances": group.len(),
                        "degenerate": degenerate,
                    })
                })
                .collect();
            let message = format!("wrote {} transport reports", reports.len());
            let value = json!({
                "command": "verify-transport",
                "structure_hash": m.hash(),
                "seed": seed,
                "summary": summary,
                "reports": reports,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &reports_csv(&reports), &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }

        Command::VerifyMaximal => {
            let grid = grid_with_budget(config.required_grid()?);
            let (fields, seed) = config.resolve_fields(&grid)?;
            let sigmas = match config.sigma.as_deref() {
                None => return Err(Error::Config("sigma: missing".into())),
                Some([]) => return Err(Error::Config("sigma: empty".into())),
                Some(s) => s.to_vec(),
            };
            let mut reports = Vec::new();
            for u in &fields {
                for &sigma in &sigmas {
                    reports.push(maximal_regularity(u, m, sigma, &grid, seed)?);
                }
            }
            let gains: Vec<f64> = reports.iter().filter_map(|r| r.gain_quotient).collect();
            let gain_spread = match (
                gains.iter().cloned().fold(f64::INFINITY, f64::min),
                gains.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            ) {
                (lo, hi) if lo > 0.0 && hi.is_finite() => Some(hi / lo),
                _ => None,
            };
            let summary: Vec<serde_json::Value> = sigmas
                .iter()
                .map(|&sigma| {
                    let group: Vec<&EstimateReport> =
                        reports.iter().filter(|r| r.sigma == Some(sigma)).collect();
                    let max_q = group
                        .iter()
                        .filter_map(|r| r.quotient)
                        .fold(f64::NEG_INFINITY, f64::max);
                    json!({
                        "sigma": sigma,
                        "sigma_equals_one": sigma == 1.0,
                        "max_quotient": if max_q.is_finite() { Some(max_q) } else { None },
                        "instances": group.len(),
                    })
                })
                .collect();
            let message = format!(
                "wrote {} maximal-regularity reports (gain spread {:?})",
                reports.len(),
                gain_spread
            );
            let value = json!({
                "command": "verify-maximal",
                "structure_hash": m.hash(),
                "seed": seed,
                "gain_spread": gain_spread,
                "summary": summary,
                "reports": reports,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &reports_csv(&reports), &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }

        Command::Scaling => {
            let grid = grid_with_budget(config.required_grid()?);
            let (fields, seed) = config.resolve_fields(&grid)?;
            let exponents = config.parsed_exponents()?;
            let radii = config.required_radii()?;
            let policy = config.grid_policy.unwrap_or(GridPolicy::Adapted);
            let probe_shift = config
                .probe_shift
                .as_deref()
                .map(|s| {
                    parse_rational(s)
                        .map_err(|e| Error::Config(format!("probe_shift: {e}")))
                })
                .transpose()?;

            let mut reports = Vec::new();
            let mut summary = Vec::new();
            let mut max_abs_slope = 0.0f64;
            for (fi, u) in fields.iter().enumerate() {
                for (beta, gamma) in &exponents {
                    let out = scaling_experiment(
                        u,
                        m,
                        beta,
                        gamma,
                        radii,
                        &grid,
                        policy,
                        probe_shift.as_ref(),
                        seed,
                    )?;
                    max_abs_slope = max_abs_slope.max(out.fitted_slope.abs());
                    summary.push(json!({
                        "field": fi,
                        "beta": beta.to_string(),
                        "gamma": gamma.to_string(),
                        "radii": out.radii,
                        "ratios": out.ratios,
                        "fitted_slope": out.fitted_slope,
                        "insufficient_radii": out.insufficient_radii,
                        "policy": out.policy,
                        "probe": out.probe,
                    }));
                    reports.extend(out.reports);
                }
            }
            let message = format!(
                "wrote {} scaling reports, max |slope| = {max_abs_slope:.3e}",
                reports.len()
            );
            let value = json!({
                "command": "scaling",
                "structure_hash": m.hash(),
                "seed": seed,
                "summary": summary,
                "reports": reports,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &reports_csv(&reports), &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }

        Command::Refine => {
            let grid = grid_with_budget(config.required_grid()?);
            let (fields, seed) = config.resolve_fields(&grid)?;
            let exponents = config.parsed_exponents()?;
            let resolutions = match config.resolutions.as_deref() {
                None => return Err(Error::Config("resolutions: missing".into())),
                Some([]) => return Err(Error::Config("resolutions: empty".into())),
                Some(r) => r.to_vec(),
            };
            let mut reports = Vec::new();
            let mut summary = Vec::new();
            for (fi, u) in fields.iter().enumerate() {
                for (beta, gamma) in &exponents {
                    let study =
                        refinement_study(u, m, beta, gamma, &resolutions, &grid, seed)?;
                    summary.push(json!({
                        "field": fi,
                        "beta": beta.to_string(),
                        "gamma": gamma.to_string(),
                        "study": study,
                    }));
                    reports.extend(study.reports);
                }
            }
            let message = format!("wrote {} refinement reports", reports.len());
            let value = json!({
                "command": "refine",
                "structure_hash": m.hash(),
                "seed": seed,
                "summary": summary,
                "reports": reports,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &reports_csv(&reports), &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }

        Command::Toy => {
            let grid = grid_with_budget(config.required_grid()?);
            let (fields, seed) = config.resolve_fields(&grid)?;
            let radii = config.required_radii()?;
            let group = config.toy_group.unwrap_or(2);
            let mut reports = Vec::new();
            let mut summary = Vec::new();
            let mut balanced = Vec::new();
            for (fi, u) in fields.iter().enumerate() {
                let out = toy_scaling_experiment(u, m, radii, &grid, group, seed)?;
                balanced.push(out.balanced_s.clone());
                summary.push(json!({
                    "field": fi,
                    "group": out.group,
                    "radii": out.radii,
                    "coarse": out.coarse,
                    "refined": out.refined,
                    "balanced_s": out.balanced_s.as_ref().map(|s| s.to_string()),
                    "insufficient_radii": out.insufficient_radii,
                    "exploratory": out.exploratory,
                }));
                reports.extend(out.reports);
            }
            let message = format!(
                "exploratory toy scan (group {group}): balanced s = {:?}",
                balanced
                    .iter()
                    .map(|b| b.as_ref().map(|s| s.to_string()))
                    .collect::<Vec<_>>()
            );
            let value = json!({
                "command": "toy",
                "exploratory": true,
                "structure_hash": m.hash(),
                "seed": seed,
                "summary": summary,
                "reports": reports,
            });
            let (csv_path, json_path) = write_outputs(&prefix, &reports_csv(&reports), &value)?;
            Ok(RunSummary { csv_path, json_path, message })
        }
    }
}
