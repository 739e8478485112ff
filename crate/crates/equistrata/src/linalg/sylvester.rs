use crate::error::Result;
use crate::mat::{ensure_square_c, ensure_square_r, kron_c, kron_r, CMatrix, RMatrix};

/// Matrix of the operator `X -> X*A - B*X` on the space of m-by-n matrices,
/// where `A` is n-by-n and `B` is m-by-m.
///
/// Vectorization is column-stacking, so the operator matrix is
/// `A^T (x) Id_m - Id_n (x) B` of size nm-by-nm. Its spectrum is
/// `{lambda_i - mu_j}` over eigenvalues `lambda` of `A` and `mu` of `B`,
/// with multiplicities.
pub fn sylvester_operator_c(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let n = ensure_square_c(a)?;
    let m = ensure_square_c(b)?;
    let at = a.transpose();
    Ok(kron_c(&at, &CMatrix::identity(m, m)) - kron_c(&CMatrix::identity(n, n), b))
}

/// Real version of [`sylvester_operator_c`].
pub fn sylvester_operator_r(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
    let n = ensure_square_r(a)?;
    let m = ensure_square_r(b)?;
    let at = a.transpose();
    Ok(kron_r(&at, &RMatrix::identity(m, m)) - kron_r(&RMatrix::identity(n, n), b))
}
