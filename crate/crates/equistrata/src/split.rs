//! Spectral block-splitting: generalized kernels, center subspaces, certified
//! similarity to block-diagonal form, and the isomorphism class of a
//! generalized kernel as a subrepresentation.

use serde::{Deserialize, Serialize};

use crate::algebra::{decomposition_descriptor, DecompositionDescriptor, EndAlgebraBasis,
    MonoidRepresentation};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_r, nullspace_r};
use crate::linalg::spectrum::cluster_values;
use crate::mat::{RMatrix, C64};
use crate::tol::ToleranceConfig;

/// Which part of the complex plane defines the invariant subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralSet {
    /// The origin: generalized kernel.
    Zero,
    /// The imaginary axis: center subspace.
    Imag,
}

impl SpectralSet {
    fn contains(&self, v: C64, radius: f64) -> bool {
        match self {
            SpectralSet::Zero => v.norm() <= radius,
            SpectralSet::Imag => v.re.abs() <= radius,
        }
    }
}

/// A certified similarity `M A M^{-1} = diag(B1, B2)` with `spectrum(B1)`
/// inside the chosen spectral set and `spectrum(B2)` away from it.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    pub set: SpectralSet,
    pub m: RMatrix,
    pub b1: RMatrix,
    pub b2: RMatrix,
    /// `|M A M^{-1} - diag(B1, B2)| / |A|`.
    pub residual: f64,
    /// When computed against an algebra: the least-squares residual of the
    /// spectral projector in the algebra span (zero means the splitting is
    /// equivariant).
    pub projector_residual: Option<f64>,
}

fn cluster_eigenvalues(a: &RMatrix, tol: &ToleranceConfig) -> Result<(Vec<(C64, usize)>, f64)> {
    let ev = eigenvalues_r(a)?;
    let radius = tol.cluster_radius(a.norm());
    Ok((cluster_values(&ev, radius), radius))
}

/// Polynomial annihilating the selected clusters: the product of
/// `(A - v)^mult` over selected cluster values, assembled from real factors
/// (conjugate pairs combine into quadratics). Factors are normalized to keep
/// the scale bounded.
fn spectral_polynomial(
    a: &RMatrix,
    clusters: &[(C64, usize)],
    select: impl Fn(C64) -> bool,
) -> RMatrix {
    let n = a.nrows();
    let mut p = RMatrix::identity(n, n);
    let mut handled_conj: Vec<C64> = Vec::new();
    for &(v, mult) in clusters {
        if !select(v) {
            continue;
        }
        if v.im != 0.0 && handled_conj.iter().any(|w| (*w - v.conj()).norm() < 1e-30) {
            continue;
        }
        let factor = if v.im == 0.0 {
            a - RMatrix::identity(n, n) * v.re
        } else {
            handled_conj.push(v);
            // (A - v)(A - conj v) = A^2 - 2 Re(v) A + |v|^2
            a * a - a * (2.0 * v.re) + RMatrix::identity(n, n) * v.norm_sqr()
        };
        let scale = factor.norm().max(1e-300);
        let factor = factor / scale;
        for _ in 0..mult {
            p = &p * &factor;
            let ps = p.norm();
            if ps > 0.0 {
                p /= ps;
            }
        }
    }
    p
}

/// Orthonormal basis (columns) of the invariant subspace spanned by the
/// generalized eigenvectors of the selected clusters, canonicalized by
/// pivoted Gram-Schmidt so coordinate-aligned subspaces come out as exact
/// coordinate vectors.
fn invariant_subspace(
    a: &RMatrix,
    clusters: &[(C64, usize)],
    select: impl Fn(C64) -> bool + Copy,
    tol: &ToleranceConfig,
) -> Result<RMatrix> {
    let expected: usize = clusters
        .iter()
        .filter(|(v, _)| select(*v))
        .map(|(_, m)| m)
        .sum();
    let n = a.nrows();
    if expected == 0 {
        return Ok(RMatrix::zeros(n, 0));
    }
    if expected == n {
        return Ok(RMatrix::identity(n, n));
    }
    let p = spectral_polynomial(a, clusters, select);
    let kernel = nullspace_r(&p, tol)?;
    if kernel.ncols() != expected {
        return Err(Error::AmbiguousCluster(format!(
            "invariant subspace dimension {} disagrees with clustered multiplicity {expected}",
            kernel.ncols()
        )));
    }
    Ok(canonical_basis(&kernel))
}

/// Deterministic orthonormal basis of the column span: pivoted Gram-Schmidt
/// on the orthogonal projector, largest pivot first, pivot entry positive.
fn canonical_basis(basis: &RMatrix) -> RMatrix {
    let n = basis.nrows();
    let k = basis.ncols();
    if k == 0 {
        return basis.clone();
    }
    let proj = basis * basis.transpose();
    let mut cols: Vec<nalgebra::DVector<f64>> = (0..n).map(|j| proj.column(j).into_owned()).collect();
    let mut out = RMatrix::zeros(n, k);
    let mut taken = 0;
    let mut used = vec![false; n];
    while taken < k {
        let (pivot, _) = cols
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, c)| (j, c.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("column available");
        used[pivot] = true;
        let mut v = cols[pivot].clone();
        for t in 0..taken {
            let q = out.column(t);
            let c = v.dot(&q.into_owned());
            v -= out.column(t) * c;
        }
        let norm = v.norm();
        if norm < 1e-12 {
            continue;
        }
        v /= norm;
        // Fix the sign by the entry of largest magnitude.
        let mut best = 0;
        for i in 0..n {
            if v[i].abs() > v[best].abs() {
                best = i;
            }
        }
        if v[best] < 0.0 {
            v = -v;
        }
        // Snap entries that are numerically 0/1 so trivial splits are exact.
        for i in 0..n {
            if v[i].abs() < 1e-13 {
                v[i] = 0.0;
            } else if (v[i] - 1.0).abs() < 1e-13 {
                v[i] = 1.0;
            }
        }
        out.set_column(taken, &v);
        taken += 1;
        for c in cols.iter_mut() {
            let dot = c.dot(&out.column(taken - 1).into_owned());
            *c -= out.column(taken - 1) * dot;
        }
    }
    out
}

/// Orthonormal basis of the generalized kernel (the invariant subspace of
/// the eigenvalue cluster at zero), as matrix columns.
pub fn generalized_kernel(a: &RMatrix, tol: &ToleranceConfig) -> Result<RMatrix> {
    let (clusters, radius) = cluster_eigenvalues(a, tol)?;
    invariant_subspace(a, &clusters, |v| v.norm() <= radius, tol)
}

/// Orthonormal basis of the center subspace (all eigenvalue clusters with
/// vanishing real part). Eigenvalues between one and ten clustering radii
/// from the axis make the split ambiguous and are refused.
pub fn center_subspace(a: &RMatrix, tol: &ToleranceConfig) -> Result<RMatrix> {
    let (clusters, radius) = cluster_eigenvalues(a, tol)?;
    for &(v, _) in &clusters {
        if v.re.abs() > radius && v.re.abs() <= 10.0 * radius {
            return Err(Error::AmbiguousCluster(format!(
                "eigenvalue {v} sits at the imaginary-axis boundary"
            )));
        }
    }
    invariant_subspace(a, &clusters, |v| v.re.abs() <= radius, tol)
}

/// Splits `A` into the invariant block for the chosen spectral set and its
/// complement: `M A M^{-1} = diag(B1, B2)` with a certified residual.
///
/// Requires a spectral gap of at least 100 clustering radii between the
/// selected clusters and the rest. When `algebra` is supplied, the spectral
/// projector is additionally certified to lie in the algebra span, which is
/// exactly equivariance of the splitting.
pub fn block_split(
    a: &RMatrix,
    set: SpectralSet,
    tol: &ToleranceConfig,
    algebra: Option<&EndAlgebraBasis>,
) -> Result<SpectralSplit> {
    let n = a.nrows();
    let (clusters, radius) = cluster_eigenvalues(a, tol)?;
    // Every cluster outside the set must keep a clear distance from it,
    // otherwise the split is ill-posed.
    for (w, _) in clusters.iter().filter(|(v, _)| !set.contains(*v, radius)) {
        let gap = match set {
            SpectralSet::Zero => w.norm(),
            SpectralSet::Imag => w.re.abs(),
        };
        if gap <= 100.0 * radius {
            return Err(Error::NoSpectralGap);
        }
    }
    let u1 = invariant_subspace(a, &clusters, |v| set.contains(v, radius), tol)?;
    let u2 = invariant_subspace(a, &clusters, |v| !set.contains(v, radius), tol)?;
    let d = u1.ncols();
    let mut p = RMatrix::zeros(n, n);
    p.view_mut((0, 0), (n, d)).copy_from(&u1);
    p.view_mut((0, d), (n, n - d)).copy_from(&u2);
    let m = p
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::ToleranceFailure("subspace bases are degenerate".into()))?;
    let conj = &m * a * &p;
    let b1 = conj.view((0, 0), (d, d)).into_owned();
    let b2 = conj.view((d, d), (n - d, n - d)).into_owned();
    let mut off = conj.clone();
    off.view_mut((0, 0), (d, d)).fill(0.0);
    off.view_mut((d, d), (n - d, n - d)).fill(0.0);
    let residual = off.norm() / a.norm().max(1.0);
    if residual > tol.residual_tol {
        return Err(Error::ToleranceFailure(format!(
            "block-splitting residual {residual:e} exceeds tolerance"
        )));
    }
    let projector_residual = match algebra {
        Some(end) => {
            // Oblique spectral projector onto the selected subspace along the
            // complement: P diag(Id, 0) P^{-1}. It is a polynomial in A, so
            // membership in the algebra span certifies equivariance.
            let mut sel = RMatrix::zeros(n, n);
            for i in 0..d {
                sel[(i, i)] = 1.0;
            }
            let projector = &p * sel * &m;
            let (_, res) = end.project(&projector);
            let rel = res / projector.norm().max(1.0);
            if rel > tol.residual_tol {
                return Err(Error::ToleranceFailure(format!(
                    "spectral projector leaves the algebra span (residual {rel:e})"
                )));
            }
            Some(rel)
        }
        None => None,
    };
    Ok(SpectralSplit {
        set,
        m,
        b1,
        b2,
        residual,
        projector_residual,
    })
}

/// Restricts the representation to the generalized kernel of `a` (an
/// invariant subspace) and decomposes the restriction.
pub fn kernel_iso_class(
    a: &RMatrix,
    rep: &MonoidRepresentation,
    tol: &ToleranceConfig,
) -> Result<DecompositionDescriptor> {
    if a.nrows() != rep.dim {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, representation dim {}",
            a.nrows(),
            a.ncols(),
            rep.dim
        )));
    }
    let u = generalized_kernel(a, tol)?;
    let d = u.ncols();
    if d == 0 {
        return Ok(DecompositionDescriptor::default());
    }
    let mut restricted = Vec::with_capacity(rep.generators.len());
    for g in &rep.generators {
        let gu = g * &u;
        // Invariance certificate: the image must stay inside the subspace.
        let outside = &gu - &u * (u.transpose() * &gu);
        if outside.norm() > tol.residual_tol * g.norm().max(1.0) {
            return Err(Error::ToleranceFailure(format!(
                "generalized kernel is not invariant under a generator (residual {:e})",
                outside.norm()
            )));
        }
        restricted.push(u.transpose() * gu);
    }
    let sub = MonoidRepresentation::new(d, restricted)?;
    decomposition_descriptor(&sub, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn generalized_kernel_of_jordan_block_is_everything() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let u = generalized_kernel(&a, &tol()).unwrap();
        assert_eq!(u.ncols(), 2);
    }

    #[test]
    fn generalized_kernel_of_diag() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 5.0]);
        let u = generalized_kernel(&a, &tol()).unwrap();
        assert_eq!(u.ncols(), 1);
        assert!((u[(0, 0)] - 1.0).abs() < 1e-12);
        assert!(u[(1, 0)].abs() < 1e-12);
    }

    #[test]
    fn generalized_kernel_simple_zero() {
        // [[0,1],[0,1]] has eigenvalues {0, 1}; kernel at 0 is span{(1,0)}.
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 1.0]);
        let u = generalized_kernel(&a, &tol()).unwrap();
        assert_eq!(u.ncols(), 1);
        assert!((u[(0, 0)] - 1.0).abs() < 1e-12);
        assert!(u[(1, 0)].abs() < 1e-12);
    }

    #[test]
    fn center_subspace_cases() {
        let rot = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert_eq!(center_subspace(&rot, &tol()).unwrap().ncols(), 2);

        let mut m = RMatrix::zeros(3, 3);
        m[(0, 0)] = -1.0;
        m[(1, 2)] = 1.0;
        m[(2, 1)] = -1.0;
        let u = center_subspace(&m, &tol()).unwrap();
        assert_eq!(u.ncols(), 2);
        // the rotation block spans coordinates 1, 2
        assert!(u[(0, 0)].abs() < 1e-12 && u[(0, 1)].abs() < 1e-12);

        assert_eq!(center_subspace(&RMatrix::identity(2, 2), &tol()).unwrap().ncols(), 0);
    }

    #[test]
    fn block_split_already_diagonal_is_identity() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let s = block_split(&a, SpectralSet::Zero, &tol(), None).unwrap();
        assert!((s.m - RMatrix::identity(2, 2)).norm() < 1e-12);
        assert_eq!(s.b1.nrows(), 1);
        assert!((s.b1[(0, 0)]).abs() < 1e-12);
        assert!((s.b2[(0, 0)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_split_shear() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 1.0]);
        let s = block_split(&a, SpectralSet::Zero, &tol(), None).unwrap();
        assert!(s.b1[(0, 0)].abs() < 1e-12);
        assert!((s.b2[(0, 0)] - 1.0).abs() < 1e-12);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn block_split_requires_gap() {
        let a = RMatrix::from_row_slice(2, 2, &[1e-5, 0.0, 0.0, 1.0]);
        assert!(matches!(
            block_split(&a, SpectralSet::Zero, &tol(), None),
            Err(Error::NoSpectralGap)
        ));
    }

    #[test]
    fn kernel_iso_class_trivial_cases() {
        let rep = MonoidRepresentation::new(2, vec![]).unwrap();
        // invertible: empty descriptor
        let a = RMatrix::identity(2, 2);
        assert!(kernel_iso_class(&a, &rep, &tol()).unwrap().is_empty());
        // zero: the whole representation
        let z = RMatrix::zeros(2, 2);
        let d = kernel_iso_class(&z, &rep, &tol()).unwrap();
        assert_eq!(d.total_dim(), 2);
    }

    #[test]
    fn kernel_iso_class_z3_projection() {
        // Z_3 on R^3; A = projection onto the rotation plane (orthogonal to
        // (1,1,1)). Its kernel is the trivial summand.
        let g = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let rep = MonoidRepresentation::new(3, vec![g]).unwrap();
        let third = 1.0 / 3.0;
        let avg = RMatrix::from_element(3, 3, third);
        let a = RMatrix::identity(3, 3) - avg;
        let d = kernel_iso_class(&a, &rep, &tol()).unwrap();
        assert_eq!(d.real.len(), 1);
        assert_eq!(d.real[0].mult, 1);
        assert_eq!(d.real[0].dim, 1);
        assert!(d.complex.is_empty());
    }
}
