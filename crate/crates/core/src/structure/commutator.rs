//! Commutators of the coordinate fields with the transport operator, and
//! the triangular expansions that recover each group-1 derivative from them.
//!
//! With `Y = sum b_ij x_j d_i - d_t`, bracketing against a group-0 direction
//! picks out one column of the first block:
//! `[d_{x0_i}, Y] = sum_j b1_{ji} d_{x1_j}`.

use num::rational::BigRational;
use num::traits::Zero;

use super::pivot::staircase_pivots;
use super::{linalg, StructureMatrix};
use crate::error::{Error, Result};


/// Coefficients of `[d_{x0_i}, Y]` over the group-1 derivatives, i.e.
/// column `i` (one-based) of the first block.
pub fn commutator(m: &StructureMatrix, i: usize) -> Result<Vec<BigRational>> {
    let m0 = m.dims()[0];
    if i == 0 || i > m0 {
        return Err(Error::Domain(format!(
            "commutator index {i} out of range 1..={m0}"
        )));
    }
    Ok(m.block(0).iter().map(|row| row[i - 1].clone()).collect())
}

/// Coefficients of `[[d_{x0_i}, Y], Y]` over the group-2 derivatives:
/// column `i` of `B_2 B_1`. Exposed for the two-block toy structure; the
/// plain double bracket of two constant fields vanishes identically.
pub fn double_commutator(m: &StructureMatrix, i: usize) -> Result<Vec<BigRational>> {
    if m.kappa() < 2 {
        return Err(Error::Domain(
            "double_commutator requires at least two blocks".into(),
        ));
    }
    let m0 = m.dims()[0];
    if i == 0 || i > m0 {
        return Err(Error::Domain(format!(
            "double_commutator index {i} out of range 1..={m0}"
        )));
    }
    let prod = linalg::mat_mul(m.block(1), m.block(0));
    Ok(prod.iter().map(|row| row[i - 1].clone()).collect())
}

/// Expansion of one group-1 derivative through lower-index derivatives and a
/// single commutator, solved from the staircase of the first block:
///
/// `d_{x1_i} = sum_{j<i} c_j d_{x1_j} + c_i [d_{x0_{p_i}}, Y]`
///
/// where `p_i` is the pivot column of row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorExpansion {
    pub group_index: usize,
    /// `c_1, ..., c_i` in the identity above.
    pub coefficients: Vec<BigRational>,
    /// One-based pivot columns `p_1, ..., p_i` of the staircase rows.
    pub pivot_columns: Vec<usize>,
}

/// Solve for the expansion of `d_{x1_i}` (one-based `i`).
///
/// Requires the first block in staircase form; apply [`super::pivot_form`]
/// first. The pivot entries are nonzero by the full-rank assumption.
pub fn commutator_expansion(m: &StructureMatrix, i: usize) -> Result<CommutatorExpansion> {
    let m1 = m.dims()[1];
    if i == 0 || i > m1 {
        return Err(Error::Domain(format!(
            "expansion index {i} out of range 1..={m1}"
        )));
    }
    let b1 = m.block(0);
    let Some(pivots) = staircase_pivots(b1) else {
        return Err(Error::Domain(
            "block 1 is not in staircase form; apply pivot_form first".into(),
        ));
    };

    // Column p_i of B1 reads (b_{1,p_i}, ..., b_{i,p_i}, 0, ..., 0), so
    //   d_{x1_i} = (1/b_{i,p_i}) ( [d_{x0_{p_i}}, Y] - sum_{j<i} b_{j,p_i} d_{x1_j} ).
    let p = pivots[i - 1];
    let pivot = b1[i - 1][p].clone();
    if pivot.is_zero() {
        return Err(Error::Domain("zero pivot in staircase".into()));
    }
    let mut coefficients: Vec<BigRational> =
        (0..i - 1).map(|j| -(&b1[j][p] / &pivot)).collect();
    coefficients.push(pivot.recip());

    Ok(CommutatorExpansion {
        group_index: i,
        coefficients,
        pivot_columns: pivots[..i].iter().map(|&c| c + 1).collect(),
    })
}

/// Fully substitute the expansions for `j < i`: coefficients `alpha_k` such
/// that `d_{x1_i} = sum_{k<=i} alpha_k [d_{x0_{p_k}}, Y]`, exactly.
pub fn expand_to_commutators(m: &StructureMatrix, i: usize) -> Result<Vec<BigRational>> {
    let exp = commutator_expansion(m, i)?;
    let mut alpha = vec![BigRational::zero(); i];
    alpha[i - 1] = exp.coefficients[i - 1].clone();
    for j in (1..i).rev() {
        let c = exp.coefficients[j - 1].clone();
        if c.is_zero() {
            continue;
        }
        let sub = expand_to_commutators(m, j)?;
        for (k, a) in sub.iter().enumerate() {
            alpha[k] = &alpha[k] + &(&c * a);
        }
    }
    Ok(alpha)
}

/// Evaluate a commutator combination back to group-1 coefficients:
/// `sum_k alpha_k B1[:, p_k]`. Recovering exactly the unit vector `e_i`
/// certifies the expansion.
pub fn evaluate_commutator_combination(
    m: &StructureMatrix,
    alpha: &[BigRational],
    pivot_columns: &[usize],
) -> Vec<BigRational> {
    let m1 = m.dims()[1];
    let mut out = vec![BigRational::zero(); m1];
    for (a, &p) in alpha.iter().zip(pivot_columns) {
        let col = commutator(m, p).expect("pivot column in range");
        for (o, c) in out.iter_mut().zip(col) {
            *o = &*o + &(a * &c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::structure::pivot_form;

    fn upper() -> StructureMatrix {
        StructureMatrix::from_ints(vec![2, 2], vec![vec![vec![1, 1], vec![0, 1]]]).unwrap()
    }

    fn diag() -> StructureMatrix {
        StructureMatrix::from_ints(vec![2, 2], vec![vec![vec![2, 0], vec![0, 4]]]).unwrap()
    }

    #[test]
    fn commutator_is_a_block_column() {
        let m = StructureMatrix::from_ints(vec![1, 1], vec![vec![vec![1]]]).unwrap();
        assert_eq!(commutator(&m, 1).unwrap(), vec![int(1)]);

        assert_eq!(commutator(&upper(), 2).unwrap(), vec![int(1), int(1)]);
        assert_eq!(commutator(&diag(), 2).unwrap(), vec![int(0), int(4)]);
        assert!(commutator(&diag(), 3).is_err());
        assert!(commutator(&diag(), 0).is_err());
    }

    #[test]
    fn expansion_examples() {
        let m = StructureMatrix::from_ints(vec![1, 1], vec![vec![vec![1]]]).unwrap();
        let e = commutator_expansion(&m, 1).unwrap();
        assert_eq!(e.coefficients, vec![int(1)]);
        assert_eq!(e.pivot_columns, vec![1]);

        // [[1,1],[0,1]], i=2: d2 = -d1 + [d_{x0_2}, Y]
        let e = commutator_expansion(&upper(), 2).unwrap();
        assert_eq!(e.coefficients, vec![int(-1), int(1)]);

        // [[2,0],[0,4]], i=2: c1 = 0, c2 = 1/4
        let e = commutator_expansion(&diag(), 2).unwrap();
        assert_eq!(e.coefficients, vec![int(0), ratio(1, 4)]);
    }

    #[test]
    fn full_substitution_recovers_unit_vectors() {
        for m in [upper(), diag()] {
            let (p, _) = pivot_form(&m).unwrap();
            for i in 1..=2 {
                let alpha = expand_to_commutators(&p, i).unwrap();
                let exp = commutator_expansion(&p, i).unwrap();
                let got = evaluate_commutator_combination(&p, &alpha, &exp.pivot_columns);
                for (j, v) in got.iter().enumerate() {
                    let want = if j + 1 == i { int(1) } else { int(0) };
                    assert_eq!(*v, want, "direction {i}, component {j}");
                }
            }
        }
        // substitution check for the upper-triangular case, by hand:
        // d2 = [d_{x0_2}, Y] - [d_{x0_1}, Y]
        let alpha = expand_to_commutators(&upper(), 2).unwrap();
        assert_eq!(alpha, vec![int(-1), int(1)]);
    }

    #[test]
    fn non_staircase_input_is_rejected() {
        let m =
            StructureMatrix::from_ints(vec![2, 2], vec![vec![vec![0, 1], vec![1, 0]]]).unwrap();
        assert!(commutator_expansion(&m, 1).is_err());
    }

    #[test]
    fn double_commutator_is_a_product_column() {
        let toy = StructureMatrix::from_ints(
            vec![1, 1, 1],
            vec![vec![vec![1]], vec![vec![1]]],
        )
        .unwrap();
        assert_eq!(double_commutator(&toy, 1).unwrap(), vec![int(1)]);

        let m = StructureMatrix::from_ints(
            vec![2, 2, 1],
            vec![
                vec![vec![1, 2], vec![0, 3]],
                vec![vec![5, 7]],
            ],
        )
        .unwrap();
        // B2 B1 = [5, 31]
        assert_eq!(double_commutator(&m, 2).unwrap(), vec![int(31)]);
        assert!(double_commutator(&upper(), 1).is_err());
    }
}
