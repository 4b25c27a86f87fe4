//! Shared test oracles: a brute-force Lie-bracket enumerator independent of
//! the Kalman-matrix implementation, and seeded random structure generators.

#![allow(dead_code)]

use num::rational::BigRational;
use num::traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kolmoreg::structure::StructureMatrix;

/// A vector field with affine coefficients: `sum (A x + c)_i d_i + tau d_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineField {
    pub a: Vec<Vec<BigRational>>,
    pub c: Vec<BigRational>,
    pub tau: BigRational,
}

impl AffineField {
    fn zero(n: usize) -> Self {
        Self {
            a: vec![vec![BigRational::zero(); n]; n],
            c: vec![BigRational::zero(); n],
            tau: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.iter().all(|r| r.iter().all(Zero::is_zero))
            && self.c.iter().all(Zero::is_zero)
            && self.tau.is_zero()
    }
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

fn mat_vec(a: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// `[X, Z]` for affine fields with time-independent coefficients.
fn bracket(x: &AffineField, z: &AffineField) -> AffineField {
    let n = x.c.len();
    let a2a1 = mat_mul(&z.a, &x.a);
    let a1a2 = mat_mul(&x.a, &z.a);
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| &a2a1[i][j] - &a1a2[i][j]).collect())
        .collect();
    let c1 = mat_vec(&z.a, &x.c);
    let c2 = mat_vec(&x.a, &z.c);
    AffineField {
        a,
        c: c1.iter().zip(&c2).map(|(p, q)| p - q).collect(),
        tau: BigRational::zero(),
    }
}

fn rank_of_vectors(vs: &[Vec<BigRational>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let cols = vs[0].len();
    let mut rows: Vec<Vec<BigRational>> = vs.to_vec();
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pivot;
            for c in col..cols {
                let sub = &f * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &sub;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Spatial rank of the Lie algebra generated by the group-0 directions and
/// the transport field, enumerating iterated brackets up to length `N`.
///
/// Every bracket of these generators is a constant field, so the span of the
/// constant parts evaluated anywhere equals the span at the origin; the time
/// direction always adds one more dimension through the transport field.
pub fn lie_bracket_spatial_rank(m: &StructureMatrix) -> usize {
    let n = m.n();
    let m0 = m.dims()[0];
    let b = m.assemble();

    let mut gens: Vec<(AffineField, usize)> = (0..m0)
        .map(|k| {
            let mut f = AffineField::zero(n);
            f.c[k] = crate::common::one();
            (f, 1usize)
        })
        .collect();
    gens.push((
        AffineField { a: b, c: vec![BigRational::zero(); n], tau: -one() },
        1,
    ));

    let mut closure = gens.clone();
    let mut frontier = gens.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (f, lf) in &frontier {
            for (g, lg) in &gens {
                let len = lf + lg;
                if len > n {
                    continue;
                }
                for cand in [bracket(f, g), bracket(g, f)] {
                    if !cand.is_zero() && !closure.iter().any(|(h, _)| h == &cand) {
                        closure.push((cand.clone(), len));
                        next.push((cand, len));
                    }
                }
            }
        }
        frontier = next;
    }

    let constants: Vec<Vec<BigRational>> = closure
        .iter()
        .filter(|(f, _)| f.a.iter().all(|r| r.iter().all(Zero::is_zero)))
        .map(|(f, _)| f.c.clone())
        .collect();
    rank_of_vectors(&constants)
}

pub fn one() -> BigRational {
    BigRational::new(1.into(), 1.into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let q: i64 = rng.gen_range(1..=4);
    let p: i64 = rng.gen_range(-5 * q..=5 * q);
    BigRational::new(p.into(), q.into())
}

/// A random single-block structure with non-increasing dims summing to `n`
/// and a full-rank block; entries are rationals in `[-5, 5]`.
pub fn random_h_structure(rng: &mut ChaCha8Rng, n: usize) -> StructureMatrix {
    assert!(n >= 2);
    let m1 = rng.gen_range(1..=n / 2);
    let m0 = n - m1;
    loop {
        let block: Vec<Vec<BigRational>> = (0..m1)
            .map(|_| (0..m0).map(|_| random_rational(rng)).collect())
            .collect();
        let m = StructureMatrix::new(vec![m0, m1], vec![block]).expect("shape");
        if kolmoreg::structure::validate_structure(&m).passed() {
            return m;
        }
    }
}

/// A random chain structure with the given dims, all blocks full rank.
pub fn random_chain_structure(rng: &mut ChaCha8Rng, dims: &[usize]) -> StructureMatrix {
    loop {
        let blocks: Vec<Vec<Vec<BigRational>>> = dims
            .windows(2)
            .map(|w| {
                (0..w[1])
                    .map(|_| (0..w[0]).map(|_| random_rational(rng)).collect())
                    .collect()
            })
            .collect();
        let m = StructureMatrix::new(dims.to_vec(), blocks).expect("shape");
        if kolmoreg::structure::validate_structure(&m).passed() {
            return m;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
