//! Grid-refinement study: the same estimate at a ladder of resolutions,
//! with successive relative differences of the ratio.

use num::rational::BigRational;
use serde::Serialize;

use super::estimate::transport_estimate_with;
use super::estimate::RhsSource;
use super::report::EstimateReport;
use crate::error::{Error, Result};
use crate::spectral::{FieldSpec, GridSpec};
use crate::structure::StructureMatrix;

#[derive(Debug, Clone, Serialize)]
pub struct RefinementStudy {
    #[serde(skip)]
    pub reports: Vec<EstimateReport>,
    pub resolutions: Vec<usize>,
    pub ratios: Vec<Option<f64>>,
    /// `|ratio_{k+1} - ratio_k| / |ratio_k|`; `None` when either is degenerate.
    pub successive_rel_diffs: Vec<Option<f64>>,
    pub all_degenerate: bool,
}

pub fn refinement_study(
    u: &FieldSpec,
    m: &StructureMatrix,
    beta: &BigRational,
    gamma: &BigRational,
    resolutions: &[usize],
    grid: &GridSpec,
    seed: Option<u64>,
) -> Result<RefinementStudy> {
    if resolutions.is_empty() {
        return Err(Error::Config("resolutions: empty".into()));
    }
    if resolutions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("resolutions: must be strictly increasing".into()));
    }
    let mut reports = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let g = grid.clone().with_points(n);
        reports.push(transport_estimate_with(
            u,
            m,
            beta,
            gamma,
            &g,
            RhsSource::Symbolic,
            seed,
        )?);
    }
    let ratios: Vec<Option<f64>> = reports.iter().map(|r| r.ratio).collect();
    let successive_rel_diffs = ratios
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) if a != 0.0 => Some((b - a).abs() / a.abs()),
            _ => None,
        })
        .collect();
    let all_degenerate = reports.iter().all(|r| r.degenerate);
    Ok(RefinementStudy {
        reports,
        resolutions: resolutions.to_vec(),
        ratios,
        successive_rel_diffs,
        all_degenerate,
    })
}
