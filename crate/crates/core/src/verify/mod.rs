//! Theorem-level experiments: estimate reports for the transport and
//! maximal-regularity inequalities, dilation scale-invariance probes,
//! grid-refinement studies, and the exploratory two-block scan.
//!
//! Sweeps collect results by input index, never by completion order, so
//! emitted report files are byte-stable.

mod estimate;
mod family;
mod refine;
mod report;
mod scaling;
mod toy;

pub use estimate::{
    maximal_regularity, transport_estimate, transport_estimate_with,
    transport_report_from_fields, ReportMeta, RhsSource,
};
pub use family::GeneratorSpec;
pub use refine::{refinement_study, RefinementStudy};
pub use report::{EstimateReport, GridMeta, CSV_HEADER, DEGENERATE_THRESHOLD};
pub use scaling::{fit_slope, scaling_experiment, GridPolicy, ProbeOutcome, ScalingOutcome};
pub use toy::{toy_scaling_experiment, CandidateSlope, ToyScalingOutcome};
