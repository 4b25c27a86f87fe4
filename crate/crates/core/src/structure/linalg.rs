//! Minimal dense rational linear algebra: exactly what the structural
//! checks need, nothing more.

use num::rational::BigRational;
use num::traits::Zero;

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(m: &[Vec<BigRational>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..cols {
                let sub = &f * &a[rank][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[c])
                })
                .collect()
        })
        .collect()
}
