//! Seeded random families of Gaussian test fields. Centers are drawn so the
//! 6-sigma support always clears the box margin by construction.

use num::rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ratio;
use crate::spectral::{
    support_radius, FieldSpec, GaussianTerm, GridSpec, Polynomial, SUPPORT_FRACTION,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub count: usize,
    pub seed: u64,
    /// Uniform width range, applied per axis.
    pub width_range: (f64, f64),
    /// Maximum total degree of the random polynomial prefactor.
    pub degree_cap: u32,
}

impl GeneratorSpec {
    /// One Gaussian term per member: random widths, centers inside the
    /// margin-adjusted box, and a small random polynomial prefactor.
    pub fn generate(&self, grid: &GridSpec, dims: &[usize]) -> Result<Vec<FieldSpec>> {
        let (lo, hi) = self.width_range;
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::Config(format!(
                "generator.width_range: invalid range [{lo}, {hi}]"
            )));
        }
        if grid.group_half_widths.len() != dims.len() {
            return Err(Error::Config(
                "generator: grid groups do not match the structure".into(),
            ));
        }
        let nvars = dims.iter().sum::<usize>() + 1;
        let mut half_widths = Vec::with_capacity(nvars);
        for (g, &m) in dims.iter().enumerate() {
            half_widths.extend(std::iter::repeat(grid.group_half_widths[g]).take(m));
        }
        half_widths.push(grid.time_half_width);

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..self.count {
            let mut widths = Vec::with_capacity(nvars);
            let mut center = Vec::with_capacity(nvars);
            for &l in &half_widths {
                let w = rng.gen_range(lo..=hi);
                let cmax = (SUPPORT_FRACTION * l - support_radius(w)).max(0.0);
                if cmax == 0.0 && support_radius(w) > SUPPORT_FRACTION * l {
                    return Err(Error::Support(format!(
                        "generator: width {w} cannot fit a box of half-width {l}"
                    )));
                }
                widths.push(w);
                center.push(rng.gen_range(-cmax..=cmax));
            }

            // constant term plus up to two random monomials of degree >= 1,
            // so the field can never cancel to zero
            let mut poly = Polynomial::constant(nvars, ratio(1, 1));
            if self.degree_cap > 0 {
                for _ in 0..rng.gen_range(0..=2u32) {
                    let mut powers = vec![0u32; nvars];
                    powers[rng.gen_range(0..nvars)] += 1;
                    for _ in 1..self.degree_cap {
                        if rng.gen_bool(0.5) {
                            powers[rng.gen_range(0..nvars)] += 1;
                        }
                    }
                    let num = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                    let den = rng.gen_range(1..=3i64);
                    poly.add_term(powers, BigRational::new(num.into(), den.into()));
                }
            }
            out.push(FieldSpec::new(
                nvars,
                vec![GaussianTerm { poly, center, widths }],
            )?);
        }
        Ok(out)
    }
}
