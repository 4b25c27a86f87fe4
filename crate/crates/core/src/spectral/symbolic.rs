//! Exact symbolic differentiation on the polynomial-times-Gaussian class.
//!
//! This is the manufactured-solution generator: for a closed-form `u` the
//! right-hand side `g = L u` is produced symbolically, never by inverting
//! the operator, so every `(u, g)` pair is an exact instance of the
//! a priori estimates.

use super::field_spec::{FieldSpec, GaussianTerm};
use super::poly::Polynomial;
use crate::error::Result;
use crate::rational::{int, rational_from_f64};
use crate::spectral::operators::OperatorSpec;
use crate::structure::StructureMatrix;

/// Polynomial factor of `d_a (p * G)` with the Gaussian factored out:
/// `d_a p - 2 p (z_a - c_a) / w_a^2`, all rational (finite floats embed
/// exactly). Axes without Gaussian decay only differentiate the polynomial.
fn term_derivative_poly(t: &GaussianTerm, poly: &Polynomial, axis: usize) -> Result<Polynomial> {
    let mut out = poly.derivative(axis);
    let w = t.widths[axis];
    if w.is_finite() {
        let wq = rational_from_f64(w)?;
        let cq = rational_from_f64(t.center[axis])?;
        let k = -int(2) / (&wq * &wq);
        // linear factor k*(z_a - c_a)
        let mut linear = Polynomial::variable(poly.nvars(), axis).scale(&k);
        linear.add_term(vec![0; poly.nvars()], -k * cq);
        out = out.add(&poly.mul(&linear));
    }
    Ok(out)
}

/// The transport operator applied symbolically: per term,
/// `sum b_ij z_j * d_i(term) - d_t(term)`, sharing the term's Gaussian.
pub fn symbolic_y(f: &FieldSpec, m: &StructureMatrix) -> Result<FieldSpec> {
    let nvars = f.nvars();
    if m.n() + 1 != nvars {
        return Err(crate::error::Error::Structure(format!(
            "structure with N = {} does not match field in {} variables",
            m.n(),
            nvars
        )));
    }
    let time_axis = nvars - 1;
    let entries = m.nonzero_entries();

    let mut terms = Vec::new();
    for t in f.terms() {
        let mut poly = term_derivative_poly(t, &t.poly, time_axis)?.scale(&int(-1));
        for (i, j, b) in &entries {
            let di = term_derivative_poly(t, &t.poly, *i)?;
            let xj = Polynomial::variable(nvars, *j);
            poly = poly.add(&xj.mul(&di).scale(b));
        }
        if !poly.is_zero() {
            terms.push(GaussianTerm { poly, center: t.center.clone(), widths: t.widths.clone() });
        }
    }
    FieldSpec::new_derived(nvars, terms)
}

/// The group-0 Laplacean applied symbolically.
pub fn symbolic_laplace0(f: &FieldSpec, m: &StructureMatrix) -> Result<FieldSpec> {
    let nvars = f.nvars();
    if m.n() + 1 != nvars {
        return Err(crate::error::Error::Structure(format!(
            "structure with N = {} does not match field in {} variables",
            m.n(),
            nvars
        )));
    }
    let m0 = m.dims()[0];
    let mut terms = Vec::new();
    for t in f.terms() {
        let mut poly = Polynomial::zero(nvars);
        for axis in 0..m0 {
            let first = term_derivative_poly(t, &t.poly, axis)?;
            let second = term_derivative_poly(t, &first, axis)?;
            poly = poly.add(&second);
        }
        if !poly.is_zero() {
            terms.push(GaussianTerm { poly, center: t.center.clone(), widths: t.widths.clone() });
        }
    }
    FieldSpec::new_derived(nvars, terms)
}

/// `L u = Y u - sigma * Lap_0 u` symbolically; with `sigma = 0` this is the
/// pure transport right-hand side.
pub fn symbolic_apply(f: &FieldSpec, op: &OperatorSpec) -> Result<FieldSpec> {
    let yu = symbolic_y(f, &op.structure)?;
    if op.sigma == 0.0 {
        return Ok(yu);
    }
    let sigma_q = rational_from_f64(op.sigma)?;
    let lap = symbolic_laplace0(f, &op.structure)?;
    // merge per-Gaussian: terms from both parts that share (center, widths)
    let mut terms: Vec<GaussianTerm> = yu.terms().to_vec();
    for lt in lap.terms() {
        let neg = lt.poly.scale(&-sigma_q.clone());
        if let Some(existing) = terms
            .iter_mut()
            .find(|t| t.center == lt.center && t.widths == lt.widths)
        {
            existing.poly = existing.poly.add(&neg);
        } else {
            terms.push(GaussianTerm {
                poly: neg,
                center: lt.center.clone(),
                widths: lt.widths.clone(),
            });
        }
    }
    terms.retain(|t| !t.poly.is_zero());
    FieldSpec::new_derived(f.nvars(), terms)
}

/// Exact check used by tests: the polynomial of the first term, if any.
pub fn single_term_poly(f: &FieldSpec) -> Option<&Polynomial> {
    f.terms().first().map(|t| &t.poly)
}
