//! The Sobolev exponent law `s = beta / (1 - gamma + beta)` and the
//! interpolation identities behind it, all in exact rational arithmetic.

use num::rational::BigRational;
use num::traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, ratio};

/// An admissible `(beta, gamma)` pair together with its gain exponent `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentPair {
    #[serde(with = "crate::rational::q_string")]
    pub beta: BigRational,
    #[serde(with = "crate::rational::q_string")]
    pub gamma: BigRational,
    #[serde(with = "crate::rational::q_string")]
    pub s: BigRational,
}

/// Compute `s` from `(beta, gamma)` under the hypotheses
/// `gamma >= 0` and `0 <= 1 - gamma <= beta`, with `s = 1` in the
/// degenerate case `1 - gamma = beta = 0`.
pub fn sobolev_exponent(beta: BigRational, gamma: BigRational) -> Result<ExponentPair> {
    if beta < BigRational::zero() {
        return Err(Error::Domain(format!(
            "beta = {} violates beta >= 0",
            format_rational(&beta)
        )));
    }
    if gamma < BigRational::zero() {
        return Err(Error::Domain(format!(
            "gamma = {} violates gamma >= 0",
            format_rational(&gamma)
        )));
    }
    let one_minus_gamma = int(1) - &gamma;
    if one_minus_gamma < BigRational::zero() {
        return Err(Error::Domain(format!(
            "1 - gamma = {} violates 1 - gamma >= 0",
            format_rational(&one_minus_gamma)
        )));
    }
    if one_minus_gamma > beta {
        return Err(Error::Domain(format!(
            "1 - gamma = {} exceeds beta = {}",
            format_rational(&one_minus_gamma),
            format_rational(&beta)
        )));
    }
    let s = if one_minus_gamma.is_zero() && beta.is_zero() {
        BigRational::one()
    } else {
        &beta / (&one_minus_gamma + &beta)
    };
    Ok(ExponentPair { beta, gamma, s })
}

/// The interpolation weight `theta = 2 - 1/s` with both identities it must
/// satisfy, checked exactly for the pair that produced `s`.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaCertificate {
    #[serde(with = "crate::rational::q_string")]
    pub theta: BigRational,
    /// `1 - 2(1 - s) == theta * s`
    pub norm_identity: bool,
    /// `1 - gamma == (1 - theta) * beta`
    pub exponent_identity: bool,
}

/// Compute `theta` for `s` in `[1/2, 1]` and certify the identities.
pub fn interpolation_theta(pair: &ExponentPair) -> Result<ThetaCertificate> {
    let s = &pair.s;
    if *s < ratio(1, 2) || *s > int(1) {
        return Err(Error::Domain(format!(
            "s = {} outside [1/2, 1]",
            format_rational(s)
        )));
    }
    let theta = int(2) - s.recip();
    let norm_identity = int(1) - int(2) * (int(1) - s) == &theta * s;
    let exponent_identity =
        int(1) - &pair.gamma == (int(1) - &theta) * &pair.beta;
    Ok(ThetaCertificate { theta, norm_identity, exponent_identity })
}
