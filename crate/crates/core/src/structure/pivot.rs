//! Row reduction of the first sub-diagonal block to upper-staircase form,
//! with an invertible record of the operations used.

use num::rational::BigRational;
use num::traits::{Signed, Zero};

use super::{linalg, StructureMatrix};
use crate::error::{Error, Result};

/// One invertible row operation on the first block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOp {
    Swap { a: usize, b: usize },
    /// `row[dst] += factor * row[src]`
    AddMultiple {
        dst: usize,
        src: usize,
        factor: BigRational,
    },
}

impl RowOp {
    pub fn apply(&self, m: &mut [Vec<BigRational>]) {
        match self {
            RowOp::Swap { a, b } => m.swap(*a, *b),
            RowOp::AddMultiple { dst, src, factor } => {
                let src_row = m[*src].clone();
                for (d, s) in m[*dst].iter_mut().zip(&src_row) {
                    *d = &*d + factor * s;
                }
            }
        }
    }

    pub fn inverse(&self) -> RowOp {
        match self {
            RowOp::Swap { a, b } => RowOp::Swap { a: *a, b: *b },
            RowOp::AddMultiple { dst, src, factor } => RowOp::AddMultiple {
                dst: *dst,
                src: *src,
                factor: -factor.clone(),
            },
        }
    }
}

/// Leading-column positions if `m` is in staircase (row echelon) form with
/// every row nonzero; `None` otherwise.
pub(crate) fn staircase_pivots(m: &[Vec<BigRational>]) -> Option<Vec<usize>> {
    let mut pivots = Vec::with_capacity(m.len());
    let mut last: Option<usize> = None;
    for row in m {
        let lead = row.iter().position(|v| !v.is_zero())?;
        if let Some(prev) = last {
            if lead <= prev {
                return None;
            }
        }
        last = Some(lead);
        pivots.push(lead);
    }
    Some(pivots)
}

/// Reduce the first block to upper-staircase form with nonzero pivots.
///
/// Pivoting picks, in the leftmost eligible column, the remaining row with
/// the largest absolute value. Returns the equivalent structure and the row
/// operations applied, in order. For structures with more than one block the
/// second block is compensated (`B_2 -> B_2 R^{-1}`) so the returned matrix
/// describes the same operator in a rotated group-1 basis.
pub fn pivot_form(m: &StructureMatrix) -> Result<(StructureMatrix, Vec<RowOp>)> {
    let m1 = m.dims()[1];
    let mut b1: Vec<Vec<BigRational>> = m.block(0).to_vec();
    if linalg::rank(&b1) != m1 {
        return Err(Error::Domain(format!(
            "pivot_form requires block 1 of full rank {m1}"
        )));
    }

    let cols = m.dims()[0];
    let mut ops = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        if row == m1 {
            break;
        }
        let Some(best) = (row..m1)
            .filter(|&r| !b1[r][col].is_zero())
            .max_by(|&a, &b| b1[a][col].abs().cmp(&b1[b][col].abs()))
        else {
            continue;
        };
        if best != row {
            let op = RowOp::Swap { a: row, b: best };
            op.apply(&mut b1);
            ops.push(op);
        }
        for r in row + 1..m1 {
            if b1[r][col].is_zero() {
                continue;
            }
            let factor = -(&b1[r][col] / &b1[row][col]);
            let op = RowOp::AddMultiple { dst: r, src: row, factor };
            op.apply(&mut b1);
            b1[r][col] = BigRational::zero(); // exact by construction
            ops.push(op);
        }
        row += 1;
    }

    let mut blocks = m.blocks().to_vec();
    blocks[0] = b1;
    if m.kappa() >= 2 {
        // R^{-1} as a matrix: apply inverse ops, in reverse, to the identity.
        let mut rinv: Vec<Vec<BigRational>> = (0..m1)
            .map(|r| {
                (0..m1)
                    .map(|c| {
                        if r == c {
                            crate::rational::int(1)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for op in ops.iter().rev() {
            op.inverse().apply(&mut rinv);
        }
        blocks[1] = linalg::mat_mul(m.block(1), &rinv);
    }

    let reduced = StructureMatrix::new(m.dims().to_vec(), blocks)?;
    Ok((reduced, ops))
}
