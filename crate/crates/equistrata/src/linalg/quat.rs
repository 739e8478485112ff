use crate::error::{Error, Result};
use crate::linalg::jordan::jordan_structure;
use crate::linalg::spectrum::spectrum_c;
use crate::mat::{ensure_square_r, frob_norm_c, CMatrix, RMatrix, C64};
use crate::tol::ToleranceConfig;

/// The 4x4 generators of the regular real representation of the quaternions.
pub fn itilde() -> RMatrix {
    RMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
    )
}

pub fn jtilde() -> RMatrix {
    RMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, -1.0, 0.0, 0.0,
        ],
    )
}

pub fn ktilde() -> RMatrix {
    RMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, -1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ],
    )
}

/// A 2n-by-2n complex matrix `Z` with `S Z = conj(Z) S` for
/// `S = [[0, Id], [-Id, 0]]`, i.e. the complex picture of an n-by-n
/// quaternionic matrix. Equivalently `Z = [[X, Y], [-conj(Y), conj(X)]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatStructured {
    n: usize,
    z: CMatrix,
}

impl QuatStructured {
    /// Validates the structure relation within `residual_tol`.
    pub fn new(z: CMatrix, tol: &ToleranceConfig) -> Result<Self> {
        if !is_quat_structured(&z, tol)? {
            return Err(Error::BlockShape(
                "SZ = conj(Z)S fails beyond tolerance".into(),
            ));
        }
        let n = z.nrows() / 2;
        Ok(Self { n, z })
    }

    /// Exact construction from the blocks `X` and `Y` of `[[X, Y],
    /// [-conj(Y), conj(X)]]`.
    pub fn from_blocks(x: &CMatrix, y: &CMatrix) -> Result<Self> {
        let n = x.nrows();
        if x.nrows() != x.ncols() || y.nrows() != y.ncols() || y.nrows() != n {
            return Err(Error::DimensionMismatch(
                "X and Y must be square of equal size".into(),
            ));
        }
        let mut z = CMatrix::zeros(2 * n, 2 * n);
        z.view_mut((0, 0), (n, n)).copy_from(x);
        z.view_mut((0, n), (n, n)).copy_from(y);
        z.view_mut((n, 0), (n, n)).copy_from(&y.map(|v| -v.conj()));
        z.view_mut((n, n), (n, n)).copy_from(&x.map(|v| v.conj()));
        Ok(Self { n, z })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.z
    }

    pub fn into_matrix(self) -> CMatrix {
        self.z
    }

    pub fn block_x(&self) -> CMatrix {
        self.z.view((0, 0), (self.n, self.n)).into_owned()
    }

    pub fn block_y(&self) -> CMatrix {
        self.z.view((0, self.n), (self.n, self.n)).into_owned()
    }
}

fn s_matrix(n: usize) -> CMatrix {
    let mut s = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        s[(i, n + i)] = C64::new(1.0, 0.0);
        s[(n + i, i)] = C64::new(-1.0, 0.0);
    }
    s
}

/// True iff `|S Z - conj(Z) S| <= residual_tol * |Z|`. Errors on odd
/// dimension.
pub fn is_quat_structured(z: &CMatrix, tol: &ToleranceConfig) -> Result<bool> {
    let dim = z.nrows();
    if z.ncols() != dim {
        return Err(Error::NonSquare {
            rows: z.nrows(),
            cols: z.ncols(),
        });
    }
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    let s = s_matrix(dim / 2);
    let lhs = &s * z;
    let rhs = z.map(|v| v.conj()) * &s;
    let res = frob_norm_c(&(lhs - rhs));
    Ok(res <= tol.residual_tol * frob_norm_c(z).max(1.0))
}

/// Maps an element `[[A, B], [-B, A]]` of the real picture of complex
/// matrices to `A + Bi`. Errors if the block shape fails beyond tolerance.
pub fn embed_c(x: &RMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let dim = ensure_square_r(x)?;
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    let n = dim / 2;
    let a = x.view((0, 0), (n, n)).into_owned();
    let b = x.view((0, n), (n, n)).into_owned();
    let c = x.view((n, 0), (n, n)).into_owned();
    let d = x.view((n, n), (n, n)).into_owned();
    let scale = x.norm().max(1.0);
    if (&c + &b).norm() > tol.residual_tol * scale || (&d - &a).norm() > tol.residual_tol * scale {
        return Err(Error::BlockShape("expected [[A, B], [-B, A]]".into()));
    }
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = C64::new(a[(i, j)], b[(i, j)]);
        }
    }
    Ok(out)
}

/// Maps an element of the real picture of quaternionic matrices (4n-by-4n,
/// blocks `A, B, C, D` in the `Id, Itilde, Jtilde, Ktilde` pattern) to its
/// complex picture `[[A+Bi, C+Di], [-C+Di, A-Bi]]`.
pub fn embed_h(x: &RMatrix, tol: &ToleranceConfig) -> Result<QuatStructured> {
    let dim = ensure_square_r(x)?;
    if dim % 4 != 0 {
        return Err(Error::BlockShape(format!(
            "dimension {dim} is not a multiple of 4"
        )));
    }
    let n = dim / 4;
    let blk = |p: usize, q: usize| x.view((p * n, q * n), (n, n)).into_owned();
    let a = blk(0, 0);
    let b = blk(0, 1);
    let c = blk(0, 2);
    let d = blk(0, 3);
    // The full 4x4 block pattern determined by (A, B, C, D).
    let pattern: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(-1.0, 1), (1.0, 0), (-1.0, 3), (1.0, 2)],
        [(-1.0, 2), (1.0, 3), (1.0, 0), (-1.0, 1)],
        [(-1.0, 3), (-1.0, 2), (1.0, 1), (1.0, 0)],
    ];
    let parts = [&a, &b, &c, &d];
    let scale = x.norm().max(1.0);
    for (p, row) in pattern.iter().enumerate() {
        for (q, &(sign, which)) in row.iter().enumerate() {
            let expected = parts[which] * sign;
            if (blk(p, q) - expected).norm() > tol.residual_tol * scale {
                return Err(Error::BlockShape(format!(
                    "block ({p},{q}) violates the quaternionic pattern"
                )));
            }
        }
    }
    let cx = |re: &RMatrix, im: &RMatrix, s: f64| -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| C64::new(re[(i, j)], s * im[(i, j)]))
    };
    let xb = cx(&a, &b, 1.0);
    let yb = cx(&c, &d, 1.0);
    QuatStructured::from_blocks(&xb, &yb)
}

/// Checks the quaternionic Jordan pairing: for every eigenvalue with nonzero
/// imaginary part the Jordan partitions at the value and its conjugate agree,
/// and for every real eigenvalue each block size occurs an even number of
/// times.
pub fn quat_jordan_pairing_check(z: &QuatStructured, tol: &ToleranceConfig) -> Result<bool> {
    let m = z.matrix();
    let spec = spectrum_c(m, tol)?;
    let radius = tol.cluster_radius(frob_norm_c(m));
    for &(val, _) in &spec.eigenvalues {
        if val.im.abs() <= radius {
            // Real eigenvalue: block sizes must pair up.
            let p = jordan_structure(m, C64::new(val.re, 0.0), tol)?;
            let mut counts = std::collections::BTreeMap::new();
            for &s in p.parts() {
                *counts.entry(s).or_insert(0usize) += 1;
            }
            if counts.values().any(|c| c % 2 != 0) {
                return Ok(false);
            }
        } else if val.im > 0.0 {
            let conj = spec
                .eigenvalues
                .iter()
                .find(|(w, _)| (w - val.conj()).norm() <= radius);
            let Some(&(cval, _)) = conj else {
                return Ok(false);
            };
            let p_up = jordan_structure(m, val, tol)?;
            let p_dn = jordan_structure(m, cval, tol)?;
            if p_up != p_dn {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::complexify;

    #[test]
    fn quaternion_generator_identities() {
        let (i, j, k) = (itilde(), jtilde(), ktilde());
        let id = RMatrix::identity(4, 4);
        assert_eq!(&i * &i, -&id);
        assert_eq!(&j * &j, -&id);
        assert_eq!(&k * &k, -&id);
        assert_eq!(&i * &j * &k, -&id);
    }

    #[test]
    fn diag_i_minus_i_is_structured() {
        let tol = ToleranceConfig::default();
        let z = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
            ],
        );
        assert!(is_quat_structured(&z, &tol).unwrap());
        assert!(is_quat_structured(&CMatrix::identity(2, 2), &tol).unwrap());
        let bad = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(2.0, 0.0),
            ],
        );
        assert!(!is_quat_structured(&bad, &tol).unwrap());
    }

    #[test]
    fn embed_c_on_rotation_block() {
        let tol = ToleranceConfig::default();
        let x = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let out = embed_c(&x, &tol).unwrap();
        assert_eq!(out.nrows(), 1);
        assert!((out[(0, 0)] - C64::new(0.0, 1.0)).norm() < 1e-14);
        let id4 = RMatrix::identity(4, 4);
        let out = embed_c(&id4, &tol).unwrap();
        assert!((out - CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn embed_c_rejects_bad_shape() {
        let tol = ToleranceConfig::default();
        let x = RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        assert!(embed_c(&x, &tol).is_err());
    }

    #[test]
    fn embed_h_on_itilde() {
        let tol = ToleranceConfig::default();
        let out = embed_h(&itilde(), &tol).unwrap();
        let expect = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
            ],
        );
        assert!((out.matrix() - expect).norm() < 1e-14);
        let out = embed_h(&RMatrix::identity(8, 8), &tol).unwrap();
        assert!((out.matrix() - CMatrix::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn pairing_check_on_zero() {
        let tol = ToleranceConfig::default();
        let z = QuatStructured::new(CMatrix::zeros(4, 4), &tol).unwrap();
        assert!(quat_jordan_pairing_check(&z, &tol).unwrap());
    }

    #[test]
    fn pairing_check_on_conjugate_jordan_pair() {
        let tol = ToleranceConfig::default();
        // [B_2(i) | 0] in block form: X = B_2(i), Y = 0.
        let x = complexify(&RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]))
            + CMatrix::identity(2, 2) * C64::new(0.0, 1.0);
        let z = QuatStructured::from_blocks(&x, &CMatrix::zeros(2, 2)).unwrap();
        assert!(quat_jordan_pairing_check(&z, &tol).unwrap());
    }
}
