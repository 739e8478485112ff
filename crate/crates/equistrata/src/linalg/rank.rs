use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::mat::{CMatrix, RMatrix};
use crate::tol::ToleranceConfig;

pub fn singular_values_c(m: &CMatrix) -> Vec<f64> {
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Count of singular values above `rank_tol` relative to the largest one.
/// The zero matrix has rank zero.
pub fn numerical_rank_c(m: &CMatrix, tol: &ToleranceConfig) -> usize {
    let sv = singular_values_c(m);
    rank_from_singular_values(&sv, tol.rank_tol)
}

pub fn numerical_rank_r(m: &RMatrix, tol: &ToleranceConfig) -> usize {
    let sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    rank_from_singular_values(&sv, tol.rank_tol)
}

/// Rank with an absolute singular-value floor in addition to the relative
/// threshold, for matrices normalized to unit scale whose true magnitude may
/// shrink (powers of nearly-nilpotent matrices).
pub fn numerical_rank_c_with_floor(m: &CMatrix, tol: &ToleranceConfig, floor: f64) -> usize {
    let sv = singular_values_c(m);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    let cut = (tol.rank_tol * smax).max(floor);
    sv.iter().filter(|&&s| s > cut).count()
}

pub(crate) fn rank_from_singular_values(sv: &[f64], rank_tol: f64) -> usize {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * smax).count()
}

/// Orthonormal basis of the (right) nullspace, as matrix columns.
pub fn nullspace_c(m: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.ok_or(Error::EigenFailure)?;
    let sv = &svd.singular_values;
    let rank = rank_from_singular_values(sv.as_slice(), tol.rank_tol);
    let n = m.ncols();
    let mut out = CMatrix::zeros(n, n - rank);
    for (col, row) in (rank..n).enumerate() {
        for j in 0..n {
            out[(j, col)] = vt[(row, j)].conj();
        }
    }
    Ok(out)
}

/// Real nullspace basis of a real matrix.
pub fn nullspace_r(m: &RMatrix, tol: &ToleranceConfig) -> Result<RMatrix> {
    nullspace_r_with_floor(m, tol, 0.0)
}

/// Real nullspace with an absolute singular-value floor in addition to the
/// relative threshold. For systems whose rows are normalized to unit scale
/// this keeps a numerically-zero matrix from reporting spurious rank.
pub fn nullspace_r_with_floor(m: &RMatrix, tol: &ToleranceConfig, floor: f64) -> Result<RMatrix> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.ok_or(Error::EigenFailure)?;
    let sv = &svd.singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let cut = (tol.rank_tol * smax).max(floor);
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > cut).count()
    };
    let n = m.ncols();
    let mut out = RMatrix::zeros(n, n - rank);
    for (col, row) in (rank..n).enumerate() {
        out.set_column(col, &DVector::from_iterator(n, (0..n).map(|j| vt[(row, j)])));
    }
    Ok(out)
}

#[allow(dead_code)]
pub(crate) fn rank_of_real_span(vectors: &[DVector<f64>], tol: &ToleranceConfig) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows = vectors.len();
    let cols = vectors[0].len();
    let mut m = RMatrix::zeros(rows, cols);
    for (i, v) in vectors.iter().enumerate() {
        m.row_mut(i).copy_from(&v.transpose());
    }
    numerical_rank_r(&m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{block_diag_partition, Partition};

    #[test]
    fn identity_has_full_rank() {
        let tol = ToleranceConfig::default();
        assert_eq!(numerical_rank_r(&RMatrix::identity(3, 3), &tol), 3);
    }

    #[test]
    fn jordan_block_drops_one() {
        let tol = ToleranceConfig::default();
        let b3 = block_diag_partition(&Partition::new(vec![3]).unwrap(), num_complex::Complex::new(0.0, 0.0)).unwrap();
        assert_eq!(numerical_rank_c(&b3, &tol), 2);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let tol = ToleranceConfig::default();
        assert_eq!(numerical_rank_r(&RMatrix::zeros(4, 4), &tol), 0);
    }

    #[test]
    fn nullspace_is_orthonormal_kernel() {
        use crate::mat::complexify;
        let tol = ToleranceConfig::default();
        let m = complexify(&RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 1.0]));
        let ns = nullspace_c(&m, &tol).unwrap();
        assert_eq!(ns.ncols(), 1);
        assert!((&m * &ns).norm() < 1e-12);
        assert!((ns.column(0).norm() - 1.0).abs() < 1e-12);
    }
}
