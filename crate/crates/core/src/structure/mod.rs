//! Exact (rational-arithmetic) algebra of the block-triangular drift matrix:
//! structural validation, hypoellipticity rank check, pivot reduction,
//! commutator expansions, Sobolev exponent calculus and dilation weights.
//!
//! Floating point never enters this module; every result is an exact rational.

mod commutator;
mod dilation;
mod exponent;
pub(crate) mod linalg;
mod pivot;

pub use commutator::{
    commutator, commutator_expansion, double_commutator, evaluate_commutator_combination,
    expand_to_commutators, CommutatorExpansion,
};
pub use dilation::{dilation_law, DilationLaw};
pub use exponent::{interpolation_theta, sobolev_exponent, ExponentPair, ThetaCertificate};
pub use pivot::{pivot_form, RowOp};

use num::rational::BigRational;
use num::traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

/// Block-lower-triangular drift matrix with group dimensions `(m_0, ..., m_kappa)`.
///
/// Block `i` (zero-based) sits in block-row `i+1`, block-column `i` of the
/// assembled `N x N` matrix and has shape `m_{i+1} x m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrix {
    dims: Vec<usize>,
    blocks: Vec<Vec<Vec<BigRational>>>,
}

impl StructureMatrix {
    /// Build from group dimensions and sub-diagonal blocks.
    ///
    /// Only shape consistency is enforced here; rank and monotonicity are
    /// reported by [`validate_structure`] as passed/failed checks.
    pub fn new(dims: Vec<usize>, blocks: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Structure("dims: empty".into()));
        }
        if dims.iter().any(|&m| m == 0) {
            return Err(Error::Structure("dims: every group dimension must be >= 1".into()));
        }
        if blocks.is_empty() {
            return Err(Error::Structure("blocks: at least one sub-diagonal block required".into()));
        }
        if blocks.len() + 1 != dims.len() {
            return Err(Error::Structure(format!(
                "blocks: expected {} blocks for {} groups, got {}",
                dims.len() - 1,
                dims.len(),
                blocks.len()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            let (rows, cols) = (dims[i + 1], dims[i]);
            if b.len() != rows || b.iter().any(|r| r.len() != cols) {
                return Err(Error::Structure(format!(
                    "blocks[{i}]: expected shape {rows}x{cols}"
                )));
            }
        }
        Ok(Self { dims, blocks })
    }

    /// Convenience constructor from i64 block entries.
    pub fn from_ints(dims: Vec<usize>, blocks: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|r| r.into_iter().map(crate::rational::int).collect())
                    .collect()
            })
            .collect();
        Self::new(dims, blocks)
    }

    /// Total space dimension `N = sum(dims)`.
    pub fn n(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Number of sub-diagonal blocks.
    pub fn kappa(&self) -> usize {
        self.blocks.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Block `i` (`m_{i+1} x m_i`), zero-based.
    pub fn block(&self, i: usize) -> &[Vec<BigRational>] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<Vec<BigRational>>] {
        &self.blocks
    }

    /// Offset of group `i` in the flat coordinate vector.
    pub fn group_offset(&self, i: usize) -> usize {
        self.dims[..i].iter().sum()
    }

    /// Assemble the dense `N x N` matrix.
    pub fn assemble(&self) -> Vec<Vec<BigRational>> {
        let n = self.n();
        let mut full = vec![vec![BigRational::zero(); n]; n];
        for (i, b) in self.blocks.iter().enumerate() {
            let (ro, co) = (self.group_offset(i + 1), self.group_offset(i));
            for (r, row) in b.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    full[ro + r][co + c] = v.clone();
                }
            }
        }
        full
    }

    /// Nonzero entries of the assembled matrix as `(row, col, value)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let (ro, co) = (self.group_offset(i + 1), self.group_offset(i));
            for (r, row) in b.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.push((ro + r, co + c, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// SHA-256 of the canonical JSON form, for report provenance.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("structure serialization");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        format!("{:x}", h.finalize())
    }
}

impl Serialize for StructureMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            dims: &'a [usize],
            blocks: Vec<Vec<Vec<String>>>,
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        Wire { dims: &self.dims, blocks }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            dims: Vec<usize>,
            blocks: Vec<Vec<Vec<String>>>,
        }
        let w = Wire::deserialize(d)?;
        let mut blocks = Vec::with_capacity(w.blocks.len());
        for b in &w.blocks {
            let mut rows = Vec::with_capacity(b.len());
            for r in b {
                let mut row = Vec::with_capacity(r.len());
                for s in r {
                    row.push(parse_rational(s).map_err(D::Error::custom)?);
                }
                rows.push(row);
            }
            blocks.push(rows);
        }
        StructureMatrix::new(w.dims, blocks).map_err(D::Error::custom)
    }
}

/// One structural check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`validate_structure`]: the ordered list of checks.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Name of the first violated condition, if any.
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Check the structural assumptions: non-increasing group dimensions and
/// full-rank sub-diagonal blocks. Shape mismatches are construction errors,
/// not failed checks, so they never reach this point.
pub fn validate_structure(m: &StructureMatrix) -> ValidationReport {
    let mut checks = Vec::new();

    let mono = m.dims.windows(2).all(|w| w[0] >= w[1]);
    checks.push(CheckResult {
        name: "dims-non-increasing".into(),
        passed: mono,
        detail: if mono {
            format!("dims {:?} are non-increasing", m.dims)
        } else {
            format!("dims {:?} must be non-increasing", m.dims)
        },
    });

    checks.push(CheckResult {
        name: "dims-sum".into(),
        passed: true,
        detail: format!("sum(dims) = N = {}", m.n()),
    });

    for (i, b) in m.blocks.iter().enumerate() {
        let want = m.dims[i + 1];
        let rank = linalg::rank(b);
        checks.push(CheckResult {
            name: format!("block-{}-rank", i + 1),
            passed: rank == want,
            detail: if rank == want {
                format!("block {} has full rank {}", i + 1, want)
            } else {
                format!("block {} has rank {} < m_{} = {}", i + 1, rank, i + 1, want)
            },
        });
    }

    ValidationReport { checks }
}

/// Rank of the controllability matrix `[E, BE, B^2 E, ..., B^{N-1} E]`
/// where `E` spans the first `m_0` coordinate directions.
///
/// Equals `N` exactly when the Hormander rank condition holds (the time
/// direction contributes the extra `+1` and is always present).
pub fn kalman_rank(m: &StructureMatrix) -> usize {
    let n = m.n();
    let m0 = m.dims[0];
    let b = m.assemble();

    // columns of E, then repeatedly multiplied by B
    let mut cols: Vec<Vec<BigRational>> = (0..m0)
        .map(|k| {
            let mut e = vec![BigRational::zero(); n];
            e[k] = crate::rational::int(1);
            e
        })
        .collect();
    let mut all = cols.clone();
    for _ in 1..n {
        cols = cols
            .iter()
            .map(|c| linalg::mat_vec(&b, c))
            .collect();
        all.extend(cols.iter().cloned());
    }
    // rank of the matrix whose columns are `all`
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|r| all.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::rank(&rows)
}
