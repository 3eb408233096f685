//! Generalized Reed-Solomon generator matrices and their MDS certification.
//!
//! A `(n, k)` GRS generator has entry `(i, j) = m_j * p_j^i` for distinct
//! evaluation points `p_j` and nonzero column multipliers `m_j`. Every `k`
//! columns of such a matrix are linearly independent (a scaled Vandermonde
//! minor on distinct points), which is exactly what the retrieval scheme
//! leans on twice: any `k` query vectors look jointly uniform, and the
//! stacked decoding matrix is invertible.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldMatrix, PrimeField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrsError {
    #[error("cannot place {n} distinct evaluation points in GF({q})")]
    NotEnoughPoints { n: usize, q: u64 },
    #[error("need 1 <= k <= n, got k={k}, n={n}")]
    InvalidDimensions { n: usize, k: usize },
    #[error("column multipliers must be nonzero")]
    ZeroMultiplier,
    #[error("evaluation points and multipliers must match the code length {n}")]
    WrongPartCount { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrsGenerator {
    n: usize,
    k: usize,
    field: PrimeField,
    eval_points: Vec<FieldElement>,
    multipliers: Vec<FieldElement>,
    matrix: FieldMatrix,
}

/// Classical Reed-Solomon instance: evaluation points `0..n`, all
/// multipliers one. The simplest GRS code keeps transcripts readable; the
/// scheme needs nothing fancier.
pub fn build_grs(n: usize, k: usize, field: PrimeField) -> Result<GrsGenerator, GrsError> {
    if n as u64 > field.modulus() {
        return Err(GrsError::NotEnoughPoints {
            n,
            q: field.modulus(),
        });
    }
    let points = (0..n as u64).map(|v| field.element(v)).collect();
    let multipliers = vec![field.one(); n];
    GrsGenerator::with_parts(field, points, multipliers, k)
}

impl GrsGenerator {
    /// General instance from explicit points and multipliers. Multipliers
    /// must be nonzero; point distinctness is not enforced here so that
    /// degenerate instances can be built and caught by [`Self::check_mds`].
    pub fn with_parts(
        field: PrimeField,
        eval_points: Vec<FieldElement>,
        multipliers: Vec<FieldElement>,
        k: usize,
    ) -> Result<Self, GrsError> {
        let n = eval_points.len();
        if multipliers.len() != n {
            return Err(GrsError::WrongPartCount { n });
        }
        if k == 0 || k > n {
            return Err(GrsError::InvalidDimensions { n, k });
        }
        if multipliers.iter().any(|m| m.is_zero()) {
            return Err(GrsError::ZeroMultiplier);
        }
        let matrix = FieldMatrix::from_fn(field, k, n, |i, j| {
            multipliers[j] * eval_points[j].pow(i as u64)
        })
        .expect("parts live in the given field");
        Ok(GrsGenerator {
            n,
            k,
            field,
            eval_points,
            multipliers,
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The k x n generator matrix.
    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    /// Exhaustive MDS certification: every k-column submatrix has rank k.
    /// Instance sizes are desk-scale, so brute force over all C(n, k)
    /// subsets is the honest check.
    pub fn check_mds(&self) -> bool {
        (0..self.n)
            .combinations(self.k)
            .all(|cols| self.matrix.select_columns(&cols).rank() == self.k)
    }
}
