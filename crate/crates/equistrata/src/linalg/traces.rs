use crate::error::{Error, Result};
use crate::mat::{complexify, frob_norm_c, CMatrix, RMatrix, C64};
use crate::tol::ToleranceConfig;

/// Traces of the first `k_max` powers: `[tr(M), tr(M^2), ..., tr(M^k_max)]`.
pub fn power_traces_c(m: &CMatrix, k_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(k_max);
    let mut p = m.clone();
    for k in 0..k_max {
        if k > 0 {
            p = &p * m;
        }
        out.push(p.diagonal().sum());
    }
    out
}

/// Newton-identity spectral equality test: true iff `tr(A^k) = tr(B^k)` for
/// `k = 1..n` within `residual_tol` scaled by `max(|A|,|B|,1)^k`. A positive
/// result certifies that the spectra agree with algebraic multiplicities.
pub fn power_trace_equal_c(a: &CMatrix, b: &CMatrix, tol: &ToleranceConfig) -> Result<bool> {
    if a.nrows() != a.ncols() || b.nrows() != b.ncols() {
        return Err(Error::NonSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {} differ",
            a.nrows(),
            b.nrows()
        )));
    }
    let n = a.nrows();
    let scale = frob_norm_c(a).max(frob_norm_c(b)).max(1.0);
    let ta = power_traces_c(a, n);
    let tb = power_traces_c(b, n);
    let mut sk = 1.0;
    for k in 0..n {
        sk *= scale;
        if (ta[k] - tb[k]).norm() > tol.residual_tol * (n as f64) * sk {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn power_trace_equal_r(a: &RMatrix, b: &RMatrix, tol: &ToleranceConfig) -> Result<bool> {
    power_trace_equal_c(&complexify(a), &complexify(b), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_preserves_traces() {
        let a = RMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 0.5, -1.0, 1.0, 0.0, 2.0, 0.3]);
        let p = RMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0]);
        let b = &p * &a * p.try_inverse().unwrap();
        let tol = ToleranceConfig::default();
        assert!(power_trace_equal_r(&a, &b, &tol).unwrap());
    }

    #[test]
    fn nilpotents_share_zero_spectrum() {
        // A = 0, B = B_2(0): all power traces vanish.
        let a = RMatrix::zeros(2, 2);
        let b = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let tol = ToleranceConfig::default();
        assert!(power_trace_equal_r(&a, &b, &tol).unwrap());
    }

    #[test]
    fn distinguishes_different_spectra() {
        let a = RMatrix::identity(2, 2);
        let b = RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let tol = ToleranceConfig::default();
        assert!(!power_trace_equal_r(&a, &b, &tol).unwrap());
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let a = RMatrix::identity(2, 2);
        let b = RMatrix::identity(3, 3);
        let tol = ToleranceConfig::default();
        assert!(power_trace_equal_r(&a, &b, &tol).is_err());
    }
}
