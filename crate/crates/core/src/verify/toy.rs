//! Exploratory scaling probe for the two-block toy structure: scan candidate
//! gain exponents for a chosen group and report the one whose estimate ratio
//! is scale-balanced across a dilation sweep.
//!
//! Nothing here is a proved estimate; the output is labeled exploratory and
//! records which exponent the discrete scaling law singles out empirically.

use num::rational::BigRational;
use serde::Serialize;

use super::estimate::combine_rhs;
use super::report::{EstimateReport, GridMeta, DEGENERATE_THRESHOLD};
use super::scaling::fit_slope;
use crate::error::{Error, Result};
use crate::rational::{ratio, rational_to_f64};
use crate::spectral::{
    dilate_spec, sample, symbolic_apply, FieldSpec, GridSpec, Lattice, OperatorSpec,
    SpectralField,
};
use crate::structure::{dilation_law, StructureMatrix};

#[derive(Debug, Clone, Serialize)]
pub struct CandidateSlope {
    #[serde(with = "crate::rational::q_string")]
    pub s: BigRational,
    pub slope: f64,
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToyScalingOutcome {
    /// Target variable group (1 or 2).
    pub group: usize,
    pub radii: Vec<f64>,
    pub coarse: Vec<CandidateSlope>,
    pub refined: Vec<CandidateSlope>,
    /// Candidate with the smallest `|slope|` after refinement; empirical
    /// only, absent when the sweep cannot discriminate.
    #[serde(with = "crate::rational::q_string_opt")]
    pub balanced_s: Option<BigRational>,
    pub insufficient_radii: bool,
    /// Always true: this probe is a conjecture scan, not a theorem check.
    pub exploratory: bool,
    #[serde(skip)]
    pub reports: Vec<EstimateReport>,
}

struct RadiusData {
    ufield: SpectralField,
    denom_u: f64,
    denom_g: f64,
    grid: GridSpec,
    field_hash: String,
}

fn candidate_ratios(data: &[RadiusData], group: usize, s_values: &[BigRational]) -> Vec<Vec<f64>> {
    let orders: Vec<f64> = s_values.iter().map(rational_to_f64).collect();
    data.iter()
        .map(|d| {
            let lhs = d.ufield.weighted_group_norm_multi(Some(group), &orders);
            lhs.iter()
                .zip(&orders)
                .map(|(&l, &s)| {
                    let denom = combine_rhs(d.denom_u, d.denom_g, s);
                    if denom < DEGENERATE_THRESHOLD {
                        f64::NAN
                    } else {
                        l / denom
                    }
                })
                .collect()
        })
        .collect()
}

fn slopes_for(
    radii: &[f64],
    per_radius: &[Vec<f64>],
    s_values: &[BigRational],
) -> Vec<CandidateSlope> {
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    s_values
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let ratios: Vec<f64> = per_radius.iter().map(|row| row[k]).collect();
            let ys: Vec<f64> = ratios
                .iter()
                .filter(|q| q.is_finite() && **q > 0.0)
                .map(|q| q.ln())
                .collect();
            let (slope, _) = fit_slope(&xs[..ys.len().min(xs.len())], &ys);
            CandidateSlope { s: s.clone(), slope, ratios }
        })
        .collect()
}

/// Scan `s` over `{1/20, ..., 19/20}`, refine once around the minimizer of
/// `|slope|`, with `g = L u` at `sigma = 1` and per-radius adapted boxes.
pub fn toy_scaling_experiment(
    u: &FieldSpec,
    m: &StructureMatrix,
    radii: &[f64],
    grid: &GridSpec,
    group: usize,
    seed: Option<u64>,
) -> Result<ToyScalingOutcome> {
    if m.kappa() != 2 {
        return Err(Error::Domain(format!(
            "toy experiment requires a two-block structure, got kappa = {}",
            m.kappa()
        )));
    }
    if group != 1 && group != 2 {
        return Err(Error::Domain(format!("toy group must be 1 or 2, got {group}")));
    }
    if radii.is_empty() {
        return Err(Error::Config("radii: empty".into()));
    }

    let op = OperatorSpec::new(m.clone(), 1.0)?;
    let law = dilation_law(m);
    let structure_hash = m.hash();
    let insufficient_radii = radii.len() < 3;

    let mut data = Vec::with_capacity(radii.len());
    for &r in radii {
        let ur = dilate_spec(u, r, &law, m.dims())?;
        let grid_r = grid.dilated(r, &law);
        let lat = Lattice::build(&grid_r, m.dims())?;
        let ufield = sample(&ur, &lat)?;
        let gfield = sample(&symbolic_apply(&ur, &op)?, &lat)?;
        let denom_u = ufield.weighted_group_norm(Some(0), 2.0);
        let denom_g = gfield.spectral_l2_norm();
        data.push(RadiusData {
            field_hash: ur.hash(),
            ufield,
            denom_u,
            denom_g,
            grid: grid_r,
        });
    }

    let coarse_s: Vec<BigRational> = (1..=19).map(|k| ratio(k, 20)).collect();
    let coarse_rows = candidate_ratios(&data, group, &coarse_s);
    let coarse = slopes_for(radii, &coarse_rows, &coarse_s);

    let (refined, balanced_s) = if insufficient_radii {
        (Vec::new(), None)
    } else {
        let best = coarse
            .iter()
            .min_by(|a, b| a.slope.abs().total_cmp(&b.slope.abs()))
            .expect("non-empty scan");
        let mut refined_s = Vec::new();
        for step in -5i64..=5 {
            let cand = &best.s + ratio(step, 100);
            if cand > ratio(0, 1) && cand < ratio(1, 1) {
                refined_s.push(cand);
            }
        }
        let refined_rows = candidate_ratios(&data, group, &refined_s);
        let refined = slopes_for(radii, &refined_rows, &refined_s);
        let winner = refined
            .iter()
            .min_by(|a, b| a.slope.abs().total_cmp(&b.slope.abs()))
            .map(|c| c.s.clone());
        (refined, winner)
    };

    // CSV rows: one per (radius, coarse candidate)
    let mut reports = Vec::with_capacity(radii.len() * coarse_s.len());
    for (d, row) in data.iter().zip(&coarse_rows) {
        for (cand, &q) in coarse_s.iter().zip(row) {
            let s = rational_to_f64(cand);
            let lhs = if q.is_finite() {
                q * combine_rhs(d.denom_u, d.denom_g, s)
            } else {
                f64::NAN
            };
            let rhs_combined = combine_rhs(d.denom_u, d.denom_g, s);
            let degenerate = rhs_combined < DEGENERATE_THRESHOLD;
            reports.push(EstimateReport {
                theorem: "toy".into(),
                beta: ratio(2, 1),
                gamma: ratio(0, 1),
                s: cand.clone(),
                sigma: Some(1.0),
                lhs,
                rhs_u_factor: d.denom_u,
                rhs_g_factor: d.denom_g,
                rhs_combined,
                ratio: (!degenerate && q.is_finite()).then_some(q),
                degenerate,
                transport_norm: None,
                laplace_norm: Some(d.denom_u),
                rhs_norm: Some(d.denom_g),
                quotient: None,
                gain_quotient: None,
                sigma_equals_one: true,
                grid: GridMeta::from_grid(&d.grid),
                seed,
                field_hash: d.field_hash.clone(),
                structure_hash: structure_hash.clone(),
            });
        }
    }

    Ok(ToyScalingOutcome {
        group,
        radii: radii.to_vec(),
        coarse,
        refined,
        balanced_s,
        insufficient_radii,
        exploratory: true,
        reports,
    })
}
