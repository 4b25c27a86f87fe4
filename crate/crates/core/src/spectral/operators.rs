//! The transport and Kolmogorov operators on sampled fields, and grouped
//! fractional derivatives as Fourier multipliers.

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use super::fft::{fft_all, Direction};
use super::field::SpectralField;
use super::grid::Lattice;
use crate::error::{Error, Result};
use crate::rational::rational_to_f64;
use crate::structure::StructureMatrix;

/// The operator `L = Y - sigma * Lap_0`; `sigma = 0` is pure transport.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub structure: StructureMatrix,
    pub sigma: f64,
}

impl OperatorSpec {
    pub fn new(structure: StructureMatrix, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::Domain(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        Ok(Self { structure, sigma })
    }

    pub fn transport(structure: StructureMatrix) -> Self {
        Self { structure, sigma: 0.0 }
    }
}

fn check_compatible(lat: &Lattice, m: &StructureMatrix) -> Result<()> {
    let dims = m.dims();
    if lat.group_count() != dims.len()
        || dims
            .iter()
            .enumerate()
            .any(|(g, &mg)| lat.group_axes(g).len() != mg)
    {
        return Err(Error::Structure(
            "lattice groups do not match the structure dimensions".into(),
        ));
    }
    Ok(())
}

/// Multiply spectrum slabs by a per-index table along one axis.
fn scale_axis(data: &mut [Complex64], n: usize, stride: usize, table: &[Complex64]) {
    data.par_chunks_mut(n * stride).for_each(|slab| {
        for k in 0..n {
            let t = table[k];
            for v in &mut slab[k * stride..(k + 1) * stride] {
                *v *= t;
            }
        }
    });
}

/// Physical values of the spectral derivative, without retaining the
/// multiplied spectrum; keeps the transient footprint at one array.
pub(crate) fn derivative_values(u: &SpectralField, axis: usize) -> Vec<Complex64> {
    let lat = u.lattice();
    let shape = lat.shape();
    let mut buf = u.spectrum().to_vec();
    let table: Vec<Complex64> = lat
        .axis(axis)
        .freqs()
        .iter()
        .map(|&xi| Complex64::new(0.0, xi))
        .collect();
    let stride: usize = shape[axis + 1..].iter().product();
    scale_axis(&mut buf, shape[axis], stride, &table);
    fft_all(&mut buf, &shape, Direction::Inverse);
    buf
}

/// Spectral derivative along one flat axis (`i xi` multiplier, Nyquist row
/// already zeroed in the frequency table).
pub fn derivative(u: &SpectralField, axis: usize) -> SpectralField {
    let lat = u.lattice().clone();
    let shape = lat.shape();
    let mut spec = u.spectrum().to_vec();
    let table: Vec<Complex64> = lat
        .axis(axis)
        .freqs()
        .iter()
        .map(|&xi| Complex64::new(0.0, xi))
        .collect();
    let stride: usize = shape[axis + 1..].iter().product();
    scale_axis(&mut spec, shape[axis], stride, &table);

    let mut values = spec.clone();
    fft_all(&mut values, &shape, Direction::Inverse);
    SpectralField::from_parts(lat, values, spec)
}

/// Grouped fractional derivative: multiplies the coefficient at frequency
/// `xi` by `|xi_group|^order`. Order zero is the identity (bit-equal
/// coefficients); negative orders are rejected.
pub fn frac_derivative(u: &SpectralField, group: usize, order: f64) -> Result<SpectralField> {
    if !(order.is_finite() && order >= 0.0) {
        return Err(Error::Domain(format!(
            "fractional order must be >= 0, got {order}"
        )));
    }
    let lat = u.lattice().clone();
    if group >= lat.group_count() {
        return Err(Error::Domain(format!(
            "group {group} out of range 0..{}",
            lat.group_count()
        )));
    }
    if order == 0.0 {
        return Ok(u.clone());
    }

    let ndim = lat.ndim();
    let shape = lat.shape();
    let gaxes = lat.group_axes(group);
    let in_group: Vec<bool> = (0..ndim).map(|a| gaxes.contains(&a)).collect();
    let xi2: Vec<Vec<f64>> = (0..ndim)
        .map(|a| {
            if in_group[a] {
                lat.axis(a).freqs().iter().map(|x| x * x).collect()
            } else {
                vec![0.0; shape[a]]
            }
        })
        .collect();

    let mut spec = u.spectrum().to_vec();
    let n_last = shape[ndim - 1];
    let half = 0.5 * order;
    let last_in_group = in_group[ndim - 1];
    spec.par_chunks_mut(n_last).enumerate().for_each(|(row, chunk)| {
        let mut rest = row;
        let mut base = 0.0;
        for a in (0..ndim - 1).rev() {
            let j = rest % shape[a];
            rest /= shape[a];
            base += xi2[a][j];
        }
        for (j, v) in chunk.iter_mut().enumerate() {
            let m = base + if last_in_group { xi2[ndim - 1][j] } else { 0.0 };
            *v *= m.powf(half); // 0^positive = 0: the group zero mode drops
        }
    });

    let mut values = spec.clone();
    fft_all(&mut values, &shape, Direction::Inverse);
    Ok(SpectralField::from_parts(lat, values, spec))
}

/// The transport operator `Y u = sum b_ij x_j d_i u - d_t u`: derivatives
/// spectrally, coordinate multiplication pointwise in physical space.
pub fn apply_y(u: &SpectralField, op: &OperatorSpec) -> Result<SpectralField> {
    let lat = u.lattice().clone();
    check_compatible(&lat, &op.structure)?;
    let shape = lat.shape();
    let strides = lat.strides();

    // acc = -d_t u
    let mut acc = derivative_values(u, lat.time_axis());
    acc.par_chunks_mut(1 << 16).for_each(|chunk| {
        for v in chunk {
            *v = -*v;
        }
    });

    // group entries by derivative axis so each inverse transform runs once
    let mut by_axis: std::collections::BTreeMap<usize, Vec<(usize, f64)>> =
        std::collections::BTreeMap::new();
    for (i, j, b) in op.structure.nonzero_entries() {
        by_axis.entry(i).or_default().push((j, rational_to_f64(&b)));
    }

    for (axis_i, entries) in by_axis {
        let dvv = derivative_values(u, axis_i);
        for (axis_j, b) in entries {
            let coords = lat.axis(axis_j).coords();
            let (n_j, s_j) = (shape[axis_j], strides[axis_j]);
            acc.par_chunks_mut(1 << 14)
                .enumerate()
                .for_each(|(c, chunk)| {
                    let offset = c << 14;
                    for (k, a) in chunk.iter_mut().enumerate() {
                        let flat = offset + k;
                        let xj = coords[(flat / s_j) % n_j];
                        *a += b * xj * dvv[flat];
                    }
                });
        }
    }

    Ok(SpectralField::from_values(lat, acc))
}

/// The full operator `L u = Y u - sigma * Lap_0 u = Y u + sigma * D_0^2 u`.
/// With `sigma = 0` this is exactly `apply_y`.
pub fn apply_l(u: &SpectralField, op: &OperatorSpec) -> Result<SpectralField> {
    let yu = apply_y(u, op)?;
    if op.sigma == 0.0 {
        return Ok(yu);
    }
    let d2 = frac_derivative(u, 0, 2.0)?;
    yu.combine(1.0, op.sigma, &d2)
}
