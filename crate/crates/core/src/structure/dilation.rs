//! Anisotropic dilation weights and the homogeneous dimension.
//!
//! Group `i` carries weight `2i + 1` and time carries weight `2`, which makes
//! both the transport part and the group-0 Laplacean homogeneous of degree 2.

use serde::Serialize;

use super::StructureMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationLaw {
    /// Weight of each variable group, `2i + 1`.
    pub group_weights: Vec<u32>,
    /// Weight of the time variable, always 2.
    pub time_weight: u32,
    /// Homogeneous dimension `Q = sum (2i+1) m_i + 2`.
    pub homogeneous_dimension: u64,
    /// Degree of the operator under the dilation, always 2.
    pub operator_degree: u32,
}

impl DilationLaw {
    /// Weight of a flat axis index (groups first, time last).
    pub fn axis_weight(&self, dims: &[usize], axis: usize) -> u32 {
        let mut off = 0;
        for (g, &m) in dims.iter().enumerate() {
            if axis < off + m {
                return self.group_weights[g];
            }
            off += m;
        }
        self.time_weight
    }
}

pub fn dilation_law(m: &StructureMatrix) -> DilationLaw {
    let group_weights: Vec<u32> = (0..m.dims().len()).map(|i| 2 * i as u32 + 1).collect();
    let q: u64 = m
        .dims()
        .iter()
        .zip(&group_weights)
        .map(|(&mi, &w)| mi as u64 * w as u64)
        .sum::<u64>()
        + 2;
    DilationLaw {
        group_weights,
        time_weight: 2,
        homogeneous_dimension: q,
        operator_degree: 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_one_weights() {
        let m = StructureMatrix::from_ints(vec![1, 1], vec![vec![vec![1]]]).unwrap();
        let law = dilation_law(&m);
        assert_eq!(law.group_weights, vec![1, 3]);
        assert_eq!(law.time_weight, 2);
        assert_eq!(law.homogeneous_dimension, 6);
        assert_eq!(law.operator_degree, 2);
    }

    #[test]
    fn toy_weights() {
        let m = StructureMatrix::from_ints(
            vec![1, 1, 1],
            vec![vec![vec![1]], vec![vec![1]]],
        )
        .unwrap();
        let law = dilation_law(&m);
        assert_eq!(law.group_weights, vec![1, 3, 5]);
        assert_eq!(law.homogeneous_dimension, 11);
    }

    #[test]
    fn axis_weights_cover_groups_and_time() {
        let m = StructureMatrix::from_ints(
            vec![2, 1],
            vec![vec![vec![1, 0]]],
        )
        .unwrap();
        let law = dilation_law(&m);
        let dims = m.dims();
        assert_eq!(law.axis_weight(dims, 0), 1);
        assert_eq!(law.axis_weight(dims, 1), 1);
        assert_eq!(law.axis_weight(dims, 2), 3);
        assert_eq!(law.axis_weight(dims, 3), 2); // time
    }
}
