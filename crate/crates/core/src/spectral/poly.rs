//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::traits::{ToPrimitive, Zero};

use crate::rational::pow_i;

/// Exponent-vector keyed polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(nvars: usize, powers: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(powers.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(powers, c);
        p
    }

    /// The variable `x_a` as a polynomial.
    pub fn variable(nvars: usize, a: usize) -> Self {
        let mut powers = vec![0; nvars];
        powers[a] = 1;
        Self::monomial(nvars, powers, crate::rational::int(1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, powers: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(powers) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let powers: Vec<u32> = pa.iter().zip(pb).map(|(a, b)| a + b).collect();
                out.add_term(powers, ca * cb);
            }
        }
        out
    }

    /// `d/dx_a` of the polynomial part alone.
    pub fn derivative(&self, a: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (p, c) in &self.terms {
            if p[a] == 0 {
                continue;
            }
            let mut q = p.clone();
            q[a] -= 1;
            out.add_term(q, c * crate::rational::int(p[a] as i64));
        }
        out
    }

    /// Substitute `x_a -> factor * x_a` for every variable, with exact
    /// rational factors: each coefficient picks up `prod factor_a^{e_a}`.
    pub fn scale_variables(&self, factors: &[BigRational]) -> Self {
        assert_eq!(factors.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (p, c) in &self.terms {
            let mut coeff = c.clone();
            for (a, &e) in p.iter().enumerate() {
                if e > 0 {
                    coeff *= pow_i(&factors[a], e as i64);
                }
            }
            out.add_term(p.clone(), coeff);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|p| p.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, a: usize) -> u32 {
        self.terms.keys().map(|p| p[a]).max().unwrap_or(0)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (p, c) in &self.terms {
            let mut m = c.to_f64().unwrap_or(f64::NAN);
            for (a, &e) in p.iter().enumerate() {
                if e > 0 {
                    m *= x[a].powi(e as i32);
                }
            }
            acc += m;
        }
        acc
    }
}
