use crate::algebra::{EndAlgebraBasis, MonoidRepresentation};
use crate::error::Result;
use crate::linalg::nullspace_r;
use crate::mat::{kron_r, RMatrix};
use crate::tol::ToleranceConfig;

/// Orthonormal basis of the commutant `{X : X A_g = A_g X for all g}`,
/// computed as the joint kernel of the stacked commutation operators
/// `A_g^T (x) Id - Id (x) A_g`.
///
/// With no generators the commutant is all of mat(R, N) and the elementary
/// matrices are returned. The radical is left empty; see
/// [`crate::algebra::radical`].
pub fn end_algebra(rep: &MonoidRepresentation, tol: &ToleranceConfig) -> Result<EndAlgebraBasis> {
    let n = rep.dim;
    if rep.generators.is_empty() {
        let mut basis = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                let mut e = RMatrix::zeros(n, n);
                e[(i, j)] = 1.0;
                basis.push(e);
            }
        }
        return Ok(EndAlgebraBasis {
            n,
            basis,
            radical: Vec::new(),
        });
    }

    let id = RMatrix::identity(n, n);
    let mut stacked = RMatrix::zeros(rep.generators.len() * n * n, n * n);
    for (gi, g) in rep.generators.iter().enumerate() {
        // Normalize each generator block so no single generator dominates
        // the joint kernel threshold.
        let scale = g.norm().max(1.0);
        let op = (kron_r(&g.transpose(), &id) - kron_r(&id, g)) / scale;
        stacked
            .view_mut((gi * n * n, 0), (n * n, n * n))
            .copy_from(&op);
    }
    let kernel = nullspace_r(&stacked, tol)?;
    let basis = (0..kernel.ncols())
        .map(|c| {
            RMatrix::from_column_slice(n, n, kernel.column(c).as_slice())
        })
        .collect();
    Ok(EndAlgebraBasis {
        n,
        basis,
        radical: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z3_rep() -> MonoidRepresentation {
        // Cyclic shift on R^3.
        let g = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        MonoidRepresentation::new(3, vec![g]).unwrap()
    }

    #[test]
    fn trivial_monoid_full_matrix_algebra() {
        let rep = MonoidRepresentation::new(3, vec![]).unwrap();
        let tol = ToleranceConfig::default();
        let end = end_algebra(&rep, &tol).unwrap();
        assert_eq!(end.dim_end(), 9);
    }

    #[test]
    fn cyclic_shift_commutant_is_circulant() {
        let tol = ToleranceConfig::default();
        let end = end_algebra(&z3_rep(), &tol).unwrap();
        assert_eq!(end.dim_end(), 3);
        // Every basis element commutes with the generator.
        let g = &z3_rep().generators[0];
        for e in &end.basis {
            assert!((e * g - g * e).norm() < 1e-10);
        }
    }

    #[test]
    fn rank_one_projector_commutant() {
        // generators {diag(1, 0)} on R^2: commutant is the diagonal matrices.
        let rep =
            MonoidRepresentation::new(2, vec![RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])])
                .unwrap();
        let tol = ToleranceConfig::default();
        let end = end_algebra(&rep, &tol).unwrap();
        assert_eq!(end.dim_end(), 2);
    }
}
