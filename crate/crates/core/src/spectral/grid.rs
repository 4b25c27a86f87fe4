//! Periodic space-time boxes and their resolved lattices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::DilationLaw;

pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// User-facing grid description: per-group box half-widths plus time, and a
/// uniform number of points per axis. Coordinates on each axis range over
/// `[-L, L)` with the origin on a lattice node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub group_half_widths: Vec<f64>,
    pub time_half_width: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl GridSpec {
    pub fn new(group_half_widths: Vec<f64>, time_half_width: f64, n: usize) -> Self {
        Self { group_half_widths, time_half_width, n, budget: None }
    }

    /// Same box everywhere.
    pub fn isotropic(half_width: f64, groups: usize, n: usize) -> Self {
        Self::new(vec![half_width; groups], half_width, n)
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    /// Box dilated along with a field under `dilate_spec(., r, law)`: every
    /// half-width is divided by the same weight power of `r`, so the field's
    /// support keeps its relative position in the box.
    pub fn dilated(&self, r: f64, law: &DilationLaw) -> Self {
        let group_half_widths = self
            .group_half_widths
            .iter()
            .zip(&law.group_weights)
            .map(|(l, &w)| l / r.powi(w as i32))
            .collect();
        Self {
            group_half_widths,
            time_half_width: self.time_half_width / r.powi(law.time_weight as i32),
            n: self.n,
            budget: self.budget,
        }
    }
}

/// One lattice axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub half_width: f64,
    pub n: usize,
}

impl Axis {
    /// Node coordinates `-L + j * (2L/n)`; the origin sits at `j = n/2`.
    pub fn coords(&self) -> Vec<f64> {
        let h = 2.0 * self.half_width / self.n as f64;
        (0..self.n).map(|j| -self.half_width + h * j as f64).collect()
    }

    /// Spatial frequencies `pi * k / L` in FFT order, with the Nyquist row
    /// `k = -n/2` zeroed so that derivative multipliers never see it.
    pub fn freqs(&self) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|j| {
                if j == n / 2 {
                    0.0
                } else {
                    let k = if j < n / 2 { j as i64 } else { j as i64 - n as i64 };
                    std::f64::consts::PI * k as f64 / self.half_width
                }
            })
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }
}

/// A grid resolved against group dimensions: one axis per space variable
/// (groups in order) plus the trailing time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    axes: Vec<Axis>,
    /// `(offset, len)` per variable group.
    groups: Vec<(usize, usize)>,
}

impl Lattice {
    pub fn build(grid: &GridSpec, dims: &[usize]) -> Result<Self> {
        Self::build_with_time_points(grid, dims, grid.n)
    }

    /// Like [`Lattice::build`] with a different point count on the time
    /// axis. Identities whose time contributions cancel as commuting
    /// multipliers do not depend on the time resolution, and the saving is
    /// substantial on five-axis grids.
    pub fn build_with_time_points(
        grid: &GridSpec,
        dims: &[usize],
        time_points: usize,
    ) -> Result<Self> {
        if grid.group_half_widths.len() != dims.len() {
            return Err(Error::Config(format!(
                "grid.group_half_widths: expected {} entries for {} groups, got {}",
                dims.len(),
                dims.len(),
                grid.group_half_widths.len()
            )));
        }
        for n in [grid.n, time_points] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::Config(format!(
                    "grid.n: must be even and >= 8, got {n}"
                )));
            }
        }
        for (g, &l) in grid.group_half_widths.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Config(format!(
                    "grid.group_half_widths[{g}]: must be positive"
                )));
            }
        }
        if !(grid.time_half_width.is_finite() && grid.time_half_width > 0.0) {
            return Err(Error::Config("grid.time_half_width: must be positive".into()));
        }

        let nspace = dims.iter().sum::<usize>();
        let total = (grid.n as u128).pow(nspace as u32) * time_points as u128;
        if total > grid.budget() as u128 {
            return Err(Error::Budget(format!(
                "lattice needs {total} points ({} per space axis, {} in time), budget is {}",
                grid.n,
                time_points,
                grid.budget()
            )));
        }

        let mut axes = Vec::with_capacity(nspace + 1);
        let mut groups = Vec::with_capacity(dims.len());
        let mut off = 0;
        for (g, &m) in dims.iter().enumerate() {
            groups.push((off, m));
            for _ in 0..m {
                axes.push(Axis { half_width: grid.group_half_widths[g], n: grid.n });
            }
            off += m;
        }
        axes.push(Axis { half_width: grid.time_half_width, n: time_points });

        Ok(Self { axes, groups })
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, a: usize) -> &Axis {
        &self.axes[a]
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn points_per_axis(&self) -> usize {
        self.axes[0].n
    }

    pub fn time_axis(&self) -> usize {
        self.axes.len() - 1
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Flat axis indices of a variable group.
    pub fn group_axes(&self, g: usize) -> std::ops::Range<usize> {
        let (off, len) = self.groups[g];
        off..off + len
    }

    pub fn total_points(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.n).collect()
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.axes.len()];
        for a in (0..self.axes.len() - 1).rev() {
            s[a] = s[a + 1] * self.axes[a + 1].n;
        }
        s
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }
}
