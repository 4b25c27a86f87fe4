//! Transport and maximal-regularity estimate reports on manufactured
//! solution pairs `(u, g)`.

use num::rational::BigRational;

use super::report::{EstimateReport, GridMeta, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};
use crate::rational::{ratio, rational_to_f64};
use crate::spectral::{
    apply_y, sample, symbolic_apply, symbolic_y, FieldSpec, GridSpec, Lattice, OperatorSpec,
    SpectralField,
};
use crate::structure::{sobolev_exponent, ExponentPair, StructureMatrix};

/// Where the right-hand side comes from: the exact symbolic oracle or the
/// discrete transport operator itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsSource {
    Symbolic,
    Spectral,
}

/// Extra provenance attached to every report.
#[derive(Debug, Clone, Default)]
pub struct ReportMeta {
    pub seed: Option<u64>,
    pub field_hash: String,
    pub structure_hash: String,
}

pub(crate) fn combine_rhs(rhs_u: f64, rhs_g: f64, s: f64) -> f64 {
    rhs_u.powf(1.0 - s) * rhs_g.powf(s)
}

/// Assemble a transport report from already-sampled fields; the target group
/// for the left side is group 1.
pub fn transport_report_from_fields(
    u: &SpectralField,
    g: &SpectralField,
    pair: &ExponentPair,
    grid: &GridSpec,
    meta: ReportMeta,
) -> EstimateReport {
    let s = rational_to_f64(&pair.s);
    let lhs = u.weighted_group_norm(Some(1), s);
    let rhs_u = u.weighted_group_norm(Some(0), rational_to_f64(&pair.beta));
    let rhs_g = g.weighted_group_norm(Some(0), rational_to_f64(&pair.gamma));
    let rhs_combined = combine_rhs(rhs_u, rhs_g, s);
    let degenerate = rhs_combined < DEGENERATE_THRESHOLD;
    EstimateReport {
        theorem: "transport".into(),
        beta: pair.beta.clone(),
        gamma: pair.gamma.clone(),
        s: pair.s.clone(),
        sigma: None,
        lhs,
        rhs_u_factor: rhs_u,
        rhs_g_factor: rhs_g,
        rhs_combined,
        ratio: (!degenerate).then(|| lhs / rhs_combined),
        degenerate,
        transport_norm: None,
        laplace_norm: None,
        rhs_norm: None,
        quotient: None,
        gain_quotient: None,
        sigma_equals_one: false,
        grid: GridMeta::from_grid(grid),
        seed: meta.seed,
        field_hash: meta.field_hash,
        structure_hash: meta.structure_hash,
    }
}

/// The Theorem-1 experiment: `g := Y u` (manufactured), then both sides of
/// `||D_1^s u|| <= C ||D_0^beta u||^{1-s} ||D_0^gamma g||^s`.
pub fn transport_estimate(
    u: &FieldSpec,
    m: &StructureMatrix,
    beta: &BigRational,
    gamma: &BigRational,
    grid: &GridSpec,
) -> Result<EstimateReport> {
    transport_estimate_with(u, m, beta, gamma, grid, RhsSource::Symbolic, None)
}

pub fn transport_estimate_with(
    u: &FieldSpec,
    m: &StructureMatrix,
    beta: &BigRational,
    gamma: &BigRational,
    grid: &GridSpec,
    source: RhsSource,
    seed: Option<u64>,
) -> Result<EstimateReport> {
    let pair = sobolev_exponent(beta.clone(), gamma.clone())?;
    let lat = Lattice::build(grid, m.dims())?;
    let ufield = sample(u, &lat)?;
    let gfield = match source {
        RhsSource::Symbolic => sample(&symbolic_y(u, m)?, &lat)?,
        RhsSource::Spectral => apply_y(&ufield, &OperatorSpec::transport(m.clone()))?,
    };
    let meta = ReportMeta { seed, field_hash: u.hash(), structure_hash: m.hash() };
    Ok(transport_report_from_fields(&ufield, &gfield, &pair, grid, meta))
}

/// The Theorem-2 experiment: `g := L u` with the given diffusion, reporting
/// `||Yu||`, `sigma ||Lap_0 u||`, `||g||`, the maximal-regularity quotient
/// and the `2/3`-gain quotient alongside the estimate fields for `beta = 2`.
pub fn maximal_regularity(
    u: &FieldSpec,
    m: &StructureMatrix,
    sigma: f64,
    grid: &GridSpec,
    seed: Option<u64>,
) -> Result<EstimateReport> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Domain(format!(
            "maximal regularity requires sigma > 0, got {sigma}"
        )));
    }
    let op = OperatorSpec::new(m.clone(), sigma)?;
    let pair = ExponentPair {
        beta: ratio(2, 1),
        gamma: ratio(0, 1),
        s: ratio(2, 3),
    };
    let lat = Lattice::build(grid, m.dims())?;
    let ufield = sample(u, &lat)?;
    let gfield = sample(&symbolic_apply(u, &op)?, &lat)?;

    let norms = ufield.weighted_group_norm_multi(Some(0), &[2.0]);
    let laplace_norm = norms[0];
    let transport_norm = apply_y(&ufield, &op)?.l2_norm();
    let rhs_norm = gfield.spectral_l2_norm();
    let lhs = ufield.weighted_group_norm(Some(1), 2.0 / 3.0);

    let rhs_combined = combine_rhs(laplace_norm, rhs_norm, 2.0 / 3.0);
    let degenerate = rhs_combined < DEGENERATE_THRESHOLD;
    let g_ok = rhs_norm >= DEGENERATE_THRESHOLD;

    Ok(EstimateReport {
        theorem: "maximal".into(),
        beta: pair.beta,
        gamma: pair.gamma,
        s: pair.s,
        sigma: Some(sigma),
        lhs,
        rhs_u_factor: laplace_norm,
        rhs_g_factor: rhs_norm,
        rhs_combined,
        ratio: (!degenerate).then(|| lhs / rhs_combined),
        degenerate,
        transport_norm: Some(transport_norm),
        laplace_norm: Some(laplace_norm),
        rhs_norm: Some(rhs_norm),
        quotient: g_ok.then(|| (transport_norm + sigma * laplace_norm) / rhs_norm),
        gain_quotient: g_ok.then(|| lhs * sigma.powf(1.0 / 3.0) / rhs_norm),
        sigma_equals_one: sigma == 1.0,
        grid: GridMeta::from_grid(grid),
        seed,
        field_hash: u.hash(),
        structure_hash: m.hash(),
    })
}
