//! Dense matrix aliases, the JSON wire format and small shared helpers.
//!
//! Matrices serialize as `{"rows": n, "cols": m, "re": [...], "im": [...]}`
//! with entries in row-major order; `im` is omitted for real matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type RMatrix = DMatrix<f64>;
pub type CMatrix = DMatrix<C64>;

/// Wire format for real and complex matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_real(m: &RMatrix) -> Self {
        let (rows, cols) = m.shape();
        let re = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)])
            .collect();
        Self {
            rows,
            cols,
            re,
            im: None,
        }
    }

    pub fn from_complex(m: &CMatrix) -> Self {
        let (rows, cols) = m.shape();
        let mut re = Vec::with_capacity(rows * cols);
        let mut im = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                re.push(m[(i, j)].re);
                im.push(m[(i, j)].im);
            }
        }
        Self {
            rows,
            cols,
            re,
            im: Some(im),
        }
    }

    fn check(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::DimensionMismatch("zero-sized matrix".into()));
        }
        if self.re.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                self.rows * self.cols,
                self.re.len()
            )));
        }
        if let Some(im) = &self.im {
            if im.len() != self.re.len() {
                return Err(Error::DimensionMismatch(
                    "re and im lengths differ".into(),
                ));
            }
        }
        let finite = self.re.iter().all(|x| x.is_finite())
            && self
                .im
                .as_ref()
                .map_or(true, |v| v.iter().all(|x| x.is_finite()));
        if !finite {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub fn to_real(&self) -> Result<RMatrix> {
        self.check()?;
        if let Some(im) = &self.im {
            if im.iter().any(|x| *x != 0.0) {
                return Err(Error::DimensionMismatch(
                    "matrix has a nonzero imaginary part; expected real".into(),
                ));
            }
        }
        Ok(RMatrix::from_row_slice(self.rows, self.cols, &self.re))
    }

    pub fn to_complex(&self) -> Result<CMatrix> {
        self.check()?;
        let zero = vec![0.0; self.re.len()];
        let im = self.im.as_deref().unwrap_or(&zero);
        let data: Vec<C64> = self
            .re
            .iter()
            .zip(im.iter())
            .map(|(&r, &i)| C64::new(r, i))
            .collect();
        Ok(CMatrix::from_row_slice(self.rows, self.cols, &data))
    }
}

/// Promotes a real matrix to a complex one.
pub fn complexify(m: &RMatrix) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// Real part of a complex matrix, erroring if the imaginary residue exceeds
/// `tol_abs`.
pub fn realify(m: &CMatrix, tol_abs: f64) -> Result<RMatrix> {
    let worst = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > tol_abs {
        return Err(Error::ToleranceFailure(format!(
            "imaginary residue {worst:e} exceeds {tol_abs:e}"
        )));
    }
    Ok(m.map(|z| z.re))
}

pub fn frob_norm_c(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn frob_norm_r(m: &RMatrix) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Flattens a complex matrix into the real vector (re entries, im entries).
pub fn flatten_complex(m: &CMatrix) -> DVector<f64> {
    let n = m.len();
    let mut v = DVector::zeros(2 * n);
    for (idx, z) in m.iter().enumerate() {
        v[idx] = z.re;
        v[idx + n] = z.im;
    }
    v
}

/// Kronecker product of complex matrices.
pub fn kron_c(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for p in 0..br {
                for q in 0..bc {
                    out[(i * br + p, j * bc + q)] = aij * b[(p, q)];
                }
            }
        }
    }
    out
}

/// Kronecker product of real matrices.
pub fn kron_r(a: &RMatrix, b: &RMatrix) -> RMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = RMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for p in 0..br {
                for q in 0..bc {
                    out[(i * br + p, j * bc + q)] = aij * b[(p, q)];
                }
            }
        }
    }
    out
}

/// Block-diagonal assembly of complex square matrices.
pub fn block_diag_c(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.nrows();
        out.view_mut((off, off), (d, d)).copy_from(b);
        off += d;
    }
    out
}

pub fn ensure_square_c(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn ensure_square_r(m: &RMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_real() {
        let m = RMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let j = MatrixJson::from_real(&m);
        assert_eq!(j.re, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(j.to_real().unwrap(), m);
    }

    #[test]
    fn json_rejects_bad_length() {
        let j = MatrixJson {
            rows: 2,
            cols: 2,
            re: vec![1.0; 3],
            im: None,
        };
        assert!(j.to_real().is_err());
    }

    #[test]
    fn kron_shapes() {
        let a = RMatrix::identity(2, 2);
        let b = RMatrix::from_row_slice(3, 3, &[0.0; 9]);
        assert_eq!(kron_r(&a, &b).shape(), (6, 6));
    }
}
