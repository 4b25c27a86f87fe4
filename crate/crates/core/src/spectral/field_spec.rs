//! Closed-form test fields: sums of polynomial-times-anisotropic-Gaussian
//! terms over all space-time variables. The class is closed under the
//! transport operator, the group-0 Laplacean and anisotropic dilation, which
//! is what makes it the manufactured-solution substrate.

use num::rational::BigRational;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::grid::Lattice;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, pow_i, rational_from_f64};
use crate::structure::DilationLaw;

/// Degree cap for externally supplied fields.
pub const INPUT_DEGREE_CAP: u32 = 6;
/// Cap after one application of a degree-2 operator.
pub const SYMBOLIC_DEGREE_CAP: u32 = INPUT_DEGREE_CAP + 2;

/// Fraction of each half-width that the effective support may occupy.
pub const SUPPORT_FRACTION: f64 = 0.75;

/// Half-width of the effective (6-sigma) support of `exp(-((z-c)/w)^2)`:
/// the density is `exp(-18) ~ 1.5e-8` at distance `3 sqrt(2) w` from the center.
pub fn support_radius(width: f64) -> f64 {
    3.0 * std::f64::consts::SQRT_2 * width
}

/// One `p(x,t) * exp(-sum ((z_a - c_a)/w_a)^2)` term. A width of
/// `f64::INFINITY` omits the Gaussian factor on that axis (the term is then
/// constant in that variable unless the polynomial uses it, which is
/// rejected at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTerm {
    pub poly: Polynomial,
    pub center: Vec<f64>,
    pub widths: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    nvars: usize,
    terms: Vec<GaussianTerm>,
}

impl FieldSpec {
    pub fn new(nvars: usize, terms: Vec<GaussianTerm>) -> Result<Self> {
        for (ti, t) in terms.iter().enumerate() {
            if t.poly.nvars() != nvars {
                return Err(Error::Structure(format!(
                    "terms[{ti}].poly: expected {nvars} variables"
                )));
            }
            if t.center.len() != nvars || t.widths.len() != nvars {
                return Err(Error::Structure(format!(
                    "terms[{ti}]: center and widths must have {nvars} entries"
                )));
            }
            for (a, &w) in t.widths.iter().enumerate() {
                if w.is_nan() || w <= 0.0 {
                    return Err(Error::Structure(format!(
                        "terms[{ti}].widths[{a}]: must be positive (or null for none)"
                    )));
                }
                if w.is_infinite() && t.poly.degree_in(a) > 0 {
                    return Err(Error::Structure(format!(
                        "terms[{ti}]: polynomial uses variable {a} which has no Gaussian decay"
                    )));
                }
            }
            for (a, &c) in t.center.iter().enumerate() {
                if !c.is_finite() {
                    return Err(Error::Structure(format!(
                        "terms[{ti}].center[{a}]: must be finite"
                    )));
                }
            }
            if t.poly.total_degree() > INPUT_DEGREE_CAP {
                return Err(Error::Structure(format!(
                    "terms[{ti}].poly: degree {} exceeds cap {INPUT_DEGREE_CAP}",
                    t.poly.total_degree()
                )));
            }
        }
        Ok(Self { nvars, terms })
    }

    /// Internal constructor for operator outputs, which may exceed the input
    /// degree cap by the operator degree.
    pub(crate) fn new_derived(nvars: usize, terms: Vec<GaussianTerm>) -> Result<Self> {
        for (ti, t) in terms.iter().enumerate() {
            if t.poly.total_degree() > SYMBOLIC_DEGREE_CAP {
                return Err(Error::Domain(format!(
                    "terms[{ti}].poly: degree {} exceeds the symbolic cap {SYMBOLIC_DEGREE_CAP}",
                    t.poly.total_degree()
                )));
            }
        }
        Ok(Self { nvars, terms })
    }

    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    /// A plain centered Gaussian with the given widths.
    pub fn gaussian(center: Vec<f64>, widths: Vec<f64>) -> Result<Self> {
        let nvars = center.len();
        let poly = Polynomial::constant(nvars, crate::rational::int(1));
        Self::new(nvars, vec![GaussianTerm { poly, center, widths }])
    }

    /// The isotropic unit-width Gaussian `exp(-|x|^2 - t^2)` in `nvars` variables.
    pub fn standard_gaussian(nvars: usize) -> Self {
        Self::gaussian(vec![0.0; nvars], vec![1.0; nvars]).expect("valid standard gaussian")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.poly.is_zero())
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.poly.total_degree()).max().unwrap_or(0)
    }

    /// Multiply the whole field by an exact rational scalar.
    pub fn scaled(&self, c: &BigRational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| GaussianTerm {
                poly: t.poly.scale(c),
                center: t.center.clone(),
                widths: t.widths.clone(),
            })
            .collect();
        Self { nvars: self.nvars, terms }
    }

    /// Every term's effective support must stay inside `SUPPORT_FRACTION` of
    /// the box; otherwise coordinate multiplication near the periodic seam
    /// would corrupt the transport operator.
    pub fn check_support(&self, lat: &Lattice) -> Result<()> {
        if lat.ndim() != self.nvars {
            return Err(Error::Structure(format!(
                "field has {} variables but lattice has {} axes",
                self.nvars,
                lat.ndim()
            )));
        }
        for (ti, t) in self.terms.iter().enumerate() {
            for a in 0..self.nvars {
                let w = t.widths[a];
                if w.is_infinite() {
                    continue;
                }
                let reach = t.center[a].abs() + support_radius(w);
                let allowed = SUPPORT_FRACTION * lat.axis(a).half_width;
                if reach > allowed {
                    return Err(Error::Support(format!(
                        "term {ti}, axis {a}: |center| + 6-sigma radius = {reach:.4} \
                         exceeds {allowed:.4} (75% of the half-width); enlarge the box"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for t in &self.terms {
            let mut e = 0.0;
            for a in 0..self.nvars {
                let w = t.widths[a];
                if w.is_finite() {
                    let z = (x[a] - t.center[a]) / w;
                    e += z * z;
                }
            }
            acc += t.poly.eval_f64(x) * (-e).exp();
        }
        acc
    }

    /// SHA-256 of the canonical JSON form, for report provenance.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("field serialization");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        format!("{:x}", h.finalize())
    }
}

/// The field `(x, t) -> f(r^{w_0} x^(0), r^{w_1} x^(1), ..., r^{w_t} t)`:
/// centers and widths are divided by the weight power of `r` and the
/// polynomial variables substituted accordingly, exactly in the rationals.
pub fn dilate_spec(
    f: &FieldSpec,
    r: f64,
    law: &DilationLaw,
    dims: &[usize],
) -> Result<FieldSpec> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!("dilation radius must be positive, got {r}")));
    }
    let nvars = f.nvars();
    if dims.iter().sum::<usize>() + 1 != nvars {
        return Err(Error::Structure(format!(
            "dims {:?} do not match a field in {} variables",
            dims, nvars
        )));
    }
    let rq = rational_from_f64(r)?;
    let weights: Vec<u32> = (0..nvars).map(|a| law.axis_weight(dims, a)).collect();
    let factors: Vec<BigRational> =
        weights.iter().map(|&w| pow_i(&rq, w as i64)).collect();

    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let scale: Vec<f64> = weights.iter().map(|&w| r.powi(w as i32)).collect();
            GaussianTerm {
                poly: t.poly.scale_variables(&factors),
                center: t.center.iter().zip(&scale).map(|(c, s)| c / s).collect(),
                widths: t.widths.iter().zip(&scale).map(|(w, s)| w / s).collect(),
            }
        })
        .collect();
    FieldSpec::new_derived(nvars, terms)
}

// ---------------------------------------------------------------------------
// JSON wire format:
// {"terms":[{"poly":[{"coeff":"p/q","powers":[..]}],"center":[..],"widths":[..]}]}
// with `null` widths standing for axes without Gaussian decay.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct WireMonomial {
    coeff: String,
    powers: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    poly: Vec<WireMonomial>,
    center: Vec<f64>,
    widths: Vec<Option<f64>>,
}

#[derive(Serialize, Deserialize)]
struct WireField {
    terms: Vec<WireTerm>,
    /// Only needed to round-trip the zero field (no terms to infer it from).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nvars: Option<usize>,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<WireTerm> = self
            .terms
            .iter()
            .map(|t| WireTerm {
                poly: t
                    .poly
                    .terms()
                    .map(|(p, c)| WireMonomial {
                        coeff: format_rational(c),
                        powers: p.clone(),
                    })
                    .collect(),
                center: t.center.clone(),
                widths: t
                    .widths
                    .iter()
                    .map(|&w| if w.is_infinite() { None } else { Some(w) })
                    .collect(),
            })
            .collect();
        let nvars = if terms.is_empty() { Some(self.nvars) } else { None };
        WireField { terms, nvars }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WireField::deserialize(d)?;
        if wire.terms.is_empty() {
            let nvars = wire
                .nvars
                .ok_or_else(|| D::Error::custom("terms: empty and no nvars given"))?;
            return Ok(FieldSpec::zero(nvars));
        }
        let nvars = wire.terms[0].center.len();
        let mut terms = Vec::with_capacity(wire.terms.len());
        for t in &wire.terms {
            let mut poly = Polynomial::zero(nvars);
            for m in &t.poly {
                if m.powers.len() != nvars {
                    return Err(D::Error::custom(format!(
                        "poly powers: expected {nvars} entries"
                    )));
                }
                let c = parse_rational(&m.coeff).map_err(D::Error::custom)?;
                poly.add_term(m.powers.clone(), c);
            }
            terms.push(GaussianTerm {
                poly,
                center: t.center.clone(),
                widths: t
                    .widths
                    .iter()
                    .map(|w| w.unwrap_or(f64::INFINITY))
                    .collect(),
            });
        }
        FieldSpec::new(nvars, terms).map_err(D::Error::custom)
    }
}
