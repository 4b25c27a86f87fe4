//! Dilation scale-invariance probe: the estimate ratio measured along a
//! sweep of anisotropic dilations, with a log-log slope fit. The exponent
//! law is scale-balanced exactly when the fitted slope vanishes.

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use super::estimate::{combine_rhs, transport_report_from_fields, ReportMeta};
use super::report::{EstimateReport, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};
use crate::rational::rational_to_f64;
use crate::spectral::{dilate_spec, sample, symbolic_y, FieldSpec, GridSpec, Lattice};
use crate::structure::{dilation_law, sobolev_exponent, StructureMatrix};

/// How the box follows the dilation sweep.
///
/// `Adapted` dilates the box with the field, so every radius sees the same
/// relative geometry and the sweep measures the pure discrete scaling law.
/// `Fixed` keeps one box for all radii; resolutions then limit how far the
/// sweep can go before the shrunken (or grown) field stops being resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridPolicy {
    Adapted,
    Fixed,
}

/// Ordinary least squares slope of `ys` against `xs`. Fewer than three
/// points cannot expose curvature, so such fits carry a flag.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> (f64, bool) {
    let flagged = xs.len() < 3;
    if xs.len() < 2 {
        return (0.0, true);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return (0.0, true);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxy / sxx, flagged)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeOutcome {
    /// The deliberately shifted left-side exponent.
    #[serde(with = "crate::rational::q_string")]
    pub s_probe: BigRational,
    pub ratios: Vec<f64>,
    pub fitted_slope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingOutcome {
    pub radii: Vec<f64>,
    pub ratios: Vec<f64>,
    pub fitted_slope: f64,
    pub insufficient_radii: bool,
    pub policy: GridPolicy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeOutcome>,
    #[serde(skip)]
    pub reports: Vec<EstimateReport>,
}

/// Run the transport estimate on `dilate_spec(u, r)` for each radius and fit
/// the slope of `log ratio` against `log r`.
///
/// `probe_shift`, when given, measures a second sweep with the left-side
/// exponent shifted to `s + shift` while the right-hand combination keeps the
/// theorem's exponents: a scale-balanced law yields slope `3 * shift`, which
/// is the probe's detection power.
pub fn scaling_experiment(
    u: &FieldSpec,
    m: &StructureMatrix,
    beta: &BigRational,
    gamma: &BigRational,
    radii: &[f64],
    grid: &GridSpec,
    policy: GridPolicy,
    probe_shift: Option<&BigRational>,
    seed: Option<u64>,
) -> Result<ScalingOutcome> {
    if radii.is_empty() {
        return Err(Error::Config("radii: empty".into()));
    }
    let pair = sobolev_exponent(beta.clone(), gamma.clone())?;
    let law = dilation_law(m);
    let s = rational_to_f64(&pair.s);
    let s_probe = probe_shift.map(|d| &pair.s + d);
    let structure_hash = m.hash();

    let mut reports = Vec::with_capacity(radii.len());
    let mut ratios = Vec::with_capacity(radii.len());
    let mut probe_ratios = Vec::with_capacity(radii.len());
    for &r in radii {
        let ur = dilate_spec(u, r, &law, m.dims())?;
        let grid_r = match policy {
            GridPolicy::Adapted => grid.dilated(r, &law),
            GridPolicy::Fixed => grid.clone(),
        };
        let lat = Lattice::build(&grid_r, m.dims())?;
        let ufield = sample(&ur, &lat)?;
        let gfield = sample(&symbolic_y(&ur, m)?, &lat)?;
        let meta = ReportMeta {
            seed,
            field_hash: ur.hash(),
            structure_hash: structure_hash.clone(),
        };
        let rep = transport_report_from_fields(&ufield, &gfield, &pair, &grid_r, meta);
        ratios.push(rep.ratio.unwrap_or(f64::NAN));

        if let Some(sp) = &s_probe {
            let lhs = ufield.weighted_group_norm(Some(1), rational_to_f64(sp));
            let rhs = combine_rhs(rep.rhs_u_factor, rep.rhs_g_factor, s);
            probe_ratios.push(if rhs < DEGENERATE_THRESHOLD { f64::NAN } else { lhs / rhs });
        }
        reports.push(rep);
    }

    let logs: Vec<(f64, f64)> = radii
        .iter()
        .zip(&ratios)
        .filter(|(_, q)| q.is_finite() && **q > 0.0)
        .map(|(r, q)| (r.ln(), q.ln()))
        .collect();
    let xs: Vec<f64> = logs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = logs.iter().map(|p| p.1).collect();
    let (fitted_slope, insufficient_radii) = fit_slope(&xs, &ys);

    let probe = s_probe.map(|sp| {
        let lys: Vec<f64> = probe_ratios
            .iter()
            .filter(|q| q.is_finite() && **q > 0.0)
            .map(|q| q.ln())
            .collect();
        let (slope, _) = fit_slope(&xs[..lys.len().min(xs.len())], &lys);
        ProbeOutcome { s_probe: sp, ratios: probe_ratios, fitted_slope: slope }
    });

    Ok(ScalingOutcome {
        radii: radii.to_vec(),
        ratios,
        fitted_slope,
        insufficient_radii,
        policy,
        probe,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn k1() -> StructureMatrix {
        StructureMatrix::from_ints(vec![1, 1], vec![vec![vec![1]]]).unwrap()
    }

    fn grid() -> GridSpec {
        GridSpec::isotropic(8.0, 2, 32)
    }

    #[test]
    fn single_radius_is_flat_and_flagged() {
        let out = scaling_experiment(
            &FieldSpec::standard_gaussian(3),
            &k1(),
            &int(1),
            &int(0),
            &[1.0],
            &grid(),
            GridPolicy::Adapted,
            None,
            None,
        )
        .unwrap();
        assert_eq!(out.fitted_slope, 0.0);
        assert!(out.insufficient_radii);
    }

    #[test]
    fn adapted_sweep_is_scale_balanced_at_the_theorem_exponent() {
        for (b, g) in [(1, 0), (2, 0)] {
            let out = scaling_experiment(
                &FieldSpec::standard_gaussian(3),
                &k1(),
                &int(b),
                &int(g),
                &[1.0, 1.5, 2.0],
                &grid(),
                GridPolicy::Adapted,
                Some(&ratio(1, 10)),
                None,
            )
            .unwrap();
            assert!(!out.insufficient_radii);
            assert!(out.fitted_slope.abs() <= 0.02, "slope {}", out.fitted_slope);
            let probe = out.probe.unwrap();
            assert!(
                (probe.fitted_slope - 0.3).abs() < 1e-6,
                "probe slope {}",
                probe.fitted_slope
            );
        }
    }

    #[test]
    fn exact_dilation_factor_relates_fixed_grid_ratios() {
        // moderate radius on a fixed grid: ratio(r) = r^(3s - beta(1-s) - (2+gamma)s) ratio(1),
        // here with the balanced exponent, so the factor is r^0 = 1.
        // A fixed box keeps the frequency spacing pi/L; the lattice sum over
        // the |xi_1|^{2s} cusp at the origin then leaves a residue of a few
        // tenths of a percent that does not scale with the sweep. Adapted
        // boxes cancel it exactly (slope test above); this checks the fixed
        // policy at the accuracy it actually has.
        let m = k1();
        let u = FieldSpec::standard_gaussian(3);
        let out = scaling_experiment(
            &u,
            &m,
            &int(1),
            &int(0),
            &[1.0, 1.125],
            &grid().with_points(64),
            GridPolicy::Fixed,
            None,
            None,
        )
        .unwrap();
        let (a, b) = (out.ratios[0], out.ratios[1]);
        assert!((a - b).abs() / a < 1e-2, "{a} vs {b}");
    }

    #[test]
    fn fixed_grid_overflow_at_small_radius() {
        // r < 1 grows the support like r^-3 in group 1
        let err = scaling_experiment(
            &FieldSpec::standard_gaussian(3),
            &k1(),
            &int(1),
            &int(0),
            &[0.25],
            &grid(),
            GridPolicy::Fixed,
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Support(_)));
    }

    #[test]
    fn slope_fit_on_exact_data() {
        let xs = [0.0f64, 0.5, 1.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let (slope, flagged) = fit_slope(&xs, &ys);
        assert!((slope - 2.5).abs() < 1e-12);
        assert!(!flagged);
        let (slope2, flagged2) = fit_slope(&xs[..2], &ys[..2]);
        assert!((slope2 - 2.5).abs() < 1e-12);
        assert!(flagged2);
    }
}
