//! One verification record per estimate instance, with the fixed CSV schema
//! used by the batch front-end.

use num::rational::BigRational;
use serde::Serialize;

use crate::spectral::GridSpec;

/// Below this the right-hand combination counts as vanishing and the ratio
/// is never formed.
pub const DEGENERATE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct GridMeta {
    pub n: usize,
    pub l0: f64,
    pub l1: f64,
    pub lt: f64,
}

impl GridMeta {
    pub fn from_grid(grid: &GridSpec) -> Self {
        Self {
            n: grid.n,
            l0: grid.group_half_widths.first().copied().unwrap_or(f64::NAN),
            l1: grid.group_half_widths.get(1).copied().unwrap_or(f64::NAN),
            lt: grid.time_half_width,
        }
    }
}

/// Both sides of one a priori estimate, with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    /// `transport`, `maximal` or `toy`.
    pub theorem: String,
    #[serde(with = "crate::rational::q_string")]
    pub beta: BigRational,
    #[serde(with = "crate::rational::q_string")]
    pub gamma: BigRational,
    #[serde(with = "crate::rational::q_string")]
    pub s: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// `|| D_target^s u ||_2`.
    pub lhs: f64,
    /// `|| D_0^beta u ||_2`.
    pub rhs_u_factor: f64,
    /// `|| D_0^gamma g ||_2`.
    pub rhs_g_factor: f64,
    /// `rhs_u^(1-s) * rhs_g^s`.
    pub rhs_combined: f64,
    /// `lhs / rhs_combined`, absent when degenerate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    pub degenerate: bool,
    /// `|| Y u ||_2` (maximal-regularity reports).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transport_norm: Option<f64>,
    /// `|| Lap_0 u ||_2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laplace_norm: Option<f64>,
    /// `|| g ||_2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_norm: Option<f64>,
    /// `(||Yu|| + sigma ||Lap_0 u||) / ||g||`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<f64>,
    /// `|| D_1^{2/3} u || sigma^{1/3} / ||g||`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain_quotient: Option<f64>,
    /// The contradiction argument behind one of the theorems needs
    /// `sigma != 1`; recorded as metadata only.
    pub sigma_equals_one: bool,
    pub grid: GridMeta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub field_hash: String,
    pub structure_hash: String,
}

pub const CSV_HEADER: &str =
    "theorem,beta,gamma,s,sigma,lhs,rhs_u_factor,rhs_g_factor,rhs_combined,ratio,degenerate,n,L0,L1,Lt,seed";

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

impl EstimateReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.theorem,
            self.beta,
            self.gamma,
            self.s,
            opt_f64(self.sigma),
            self.lhs,
            self.rhs_u_factor,
            self.rhs_g_factor,
            self.rhs_combined,
            opt_f64(self.ratio),
            self.degenerate,
            self.grid.n,
            self.grid.l0,
            self.grid.l1,
            self.grid.lt,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        )
    }
}
