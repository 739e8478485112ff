use crate::algebra::EndAlgebraBasis;
use crate::error::{Error, Result};
use crate::mat::RMatrix;
use crate::tol::ToleranceConfig;

/// Basis of the radical of the commutant via Dickson's trace-form criterion:
/// the kernel of the Gram matrix `G_ab = tr(e_a e_b)`.
///
/// Over a field of characteristic zero with a faithful matrix representation
/// this equals the Jacobson radical. Every returned element is certified
/// nilpotent (`|x^N| <= residual_tol` after normalization); a kernel element
/// that fails the check signals a tolerance failure.
pub fn radical(end: &EndAlgebraBasis, tol: &ToleranceConfig) -> Result<Vec<RMatrix>> {
    let s = end.dim_end();
    if s == 0 {
        return Ok(Vec::new());
    }
    let mut gram = RMatrix::zeros(s, s);
    for a in 0..s {
        for b in a..s {
            let t = (&end.basis[a] * &end.basis[b]).trace();
            gram[(a, b)] = t;
            gram[(b, a)] = t;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(gram);
    let scale = eig
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut rad = Vec::new();
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= tol.rank_tol * scale {
            let coords = eig.eigenvectors.column(idx);
            let mut x = RMatrix::zeros(end.n, end.n);
            for (c, e) in coords.iter().zip(&end.basis) {
                x += e * *c;
            }
            rad.push(x);
        }
    }
    for x in &rad {
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        let y = x / norm;
        let mut p = RMatrix::identity(end.n, end.n);
        for _ in 0..end.n {
            p = &p * &y;
        }
        if p.norm() > tol.residual_tol {
            return Err(Error::ToleranceFailure(format!(
                "trace-form kernel element is not nilpotent (|x^N| = {:e})",
                p.norm()
            )));
        }
    }
    Ok(rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{end_algebra, MonoidRepresentation};

    #[test]
    fn nilpotent_monoid_radical() {
        // End = span{Id, B_2(0)}: Gram = [[2, 0], [0, 0]], radical = span{B_2(0)}.
        let g = RMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let rep = MonoidRepresentation::new(2, vec![g]).unwrap();
        let tol = ToleranceConfig::default();
        let end = end_algebra(&rep, &tol).unwrap();
        assert_eq!(end.dim_end(), 2);
        let rad = radical(&end, &tol).unwrap();
        assert_eq!(rad.len(), 1);
        // The radical element is a multiple of B_2(0).
        let r = &rad[0];
        assert!(r[(1, 0)].abs() < 1e-12);
        assert!((r[(0, 0)]).abs() < 1e-12);
        assert!((r[(1, 1)]).abs() < 1e-12);
        assert!(r[(0, 1)].abs() > 0.5);
    }

    #[test]
    fn diagonal_algebra_is_semisimple() {
        let rep =
            MonoidRepresentation::new(2, vec![RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])])
                .unwrap();
        let tol = ToleranceConfig::default();
        let end = end_algebra(&rep, &tol).unwrap();
        assert!(radical(&end, &tol).unwrap().is_empty());
    }

    #[test]
    fn group_algebra_is_semisimple() {
        let g = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let rep = MonoidRepresentation::new(3, vec![g]).unwrap();
        let tol = ToleranceConfig::default();
        let end = end_algebra(&rep, &tol).unwrap();
        assert_eq!(end.dim_end(), 3);
        assert!(radical(&end, &tol).unwrap().is_empty());
    }
}
