use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::mat::{CMatrix, RMatrix, C64};
use crate::strata::build::{
    quat_center_direction, real_center_direction, build_i_p, sample, StratumSample,
};
use crate::strata::label::{Field, StratumLabel};
use crate::strata::partition::XiLabel;
use crate::tol::ToleranceConfig;
use crate::linalg::numerical_rank_r;

/// Real dimension of the ambient algebra: `n^2` for mat(R,n), `2n^2` for
/// mat(C,n), `4n^2` for the complex picture of quaternionic matrices.
pub fn ambient_real_dim(field: Field, n: usize) -> usize {
    match field {
        Field::R => n * n,
        Field::C => 2 * n * n,
        Field::H => 4 * n * n,
    }
}

/// Real coordinates of a matrix in the ambient algebra parameterization.
///
/// Real matrices use their entries, complex matrices the real and imaginary
/// entries, and quaternionic-structured matrices the `X` and `Y` blocks of
/// `[[X, Y], [-conj(Y), conj(X)]]`.
pub fn algebra_coords(field: Field, n: usize, m: &CMatrix) -> DVector<f64> {
    match field {
        Field::R => {
            let mut v = DVector::zeros(n * n);
            for (idx, z) in m.iter().enumerate() {
                v[idx] = z.re;
            }
            v
        }
        Field::C => {
            let nn = n * n;
            let mut v = DVector::zeros(2 * nn);
            for (idx, z) in m.iter().enumerate() {
                v[idx] = z.re;
                v[idx + nn] = z.im;
            }
            v
        }
        Field::H => {
            let nn = n * n;
            let mut v = DVector::zeros(4 * nn);
            let x = m.view((0, 0), (n, n));
            let y = m.view((0, n), (n, n));
            for (idx, z) in x.iter().enumerate() {
                v[idx] = z.re;
                v[idx + nn] = z.im;
            }
            for (idx, z) in y.iter().enumerate() {
                v[idx + 2 * nn] = z.re;
                v[idx + 3 * nn] = z.im;
            }
            v
        }
    }
}

/// Inverse of [`algebra_coords`].
pub fn coords_to_matrix(field: Field, n: usize, v: &DVector<f64>) -> CMatrix {
    match field {
        Field::R => CMatrix::from_fn(n, n, |i, j| C64::new(v[j * n + i], 0.0)),
        Field::C => {
            let nn = n * n;
            CMatrix::from_fn(n, n, |i, j| C64::new(v[j * n + i], v[nn + j * n + i]))
        }
        Field::H => {
            let nn = n * n;
            let x = CMatrix::from_fn(n, n, |i, j| C64::new(v[j * n + i], v[nn + j * n + i]));
            let y = CMatrix::from_fn(n, n, |i, j| {
                C64::new(v[2 * nn + j * n + i], v[3 * nn + j * n + i])
            });
            let mut out = CMatrix::zeros(2 * n, 2 * n);
            out.view_mut((0, 0), (n, n)).copy_from(&x);
            out.view_mut((0, n), (n, n)).copy_from(&y);
            out.view_mut((n, 0), (n, n)).copy_from(&y.map(|z| -z.conj()));
            out.view_mut((n, n), (n, n)).copy_from(&x.map(|z| z.conj()));
            out
        }
    }
}

/// A real basis of the ambient algebra, as matrices in the complex picture.
pub fn algebra_basis(field: Field, n: usize) -> Vec<CMatrix> {
    let dim = ambient_real_dim(field, n);
    (0..dim)
        .map(|k| {
            let mut v = DVector::zeros(dim);
            v[k] = 1.0;
            coords_to_matrix(field, n, &v)
        })
        .collect()
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// The raw real spanning set of the stratum tangent space at a sample:
/// commutators `[V, X0]` over an ambient basis, plus the parameter
/// directions that move the imaginary eigenvalue clusters for center kinds.
pub fn tangent_span(sample: &StratumSample) -> Result<Vec<CMatrix>> {
    let label = &sample.label;
    let field = label.field();
    let n = label.ambient_n();
    let x0 = sample.matrix.as_complex();
    let mut span: Vec<CMatrix> = algebra_basis(field, n)
        .iter()
        .map(|v| commutator(v, &x0))
        .collect();
    match label {
        StratumLabel::Nilpotent { .. } => {}
        StratumLabel::CenterC { xi } => {
            for j in 0..xi.block_count() {
                span.push(center_c_direction(xi, j)?);
            }
        }
        StratumLabel::CenterR { xi, .. } => {
            for j in 0..xi.block_count() {
                let d = real_center_direction(n, xi, j)?;
                span.push(crate::mat::complexify(&d));
            }
        }
        StratumLabel::CenterH { xi, .. } => {
            for j in 0..xi.block_count() {
                span.push(quat_center_direction(n, xi, j)?.into_matrix());
            }
        }
    }
    Ok(span)
}

fn center_c_direction(xi: &XiLabel, j: usize) -> Result<CMatrix> {
    let l = xi.block_count();
    let mut z = vec![C64::new(0.0, 0.0); l];
    z[j] = C64::new(0.0, 1.0);
    build_i_p(&xi.outer, &z)
}

/// Measured and (for top strata) closed-form real dimension of a stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub measured: usize,
    pub closed_form: Option<usize>,
}

/// Numerical tangent rank of the stratum through the given sample, together
/// with the closed-form dimension when the label is the top stratum of its
/// (field, n, kind) family.
pub fn stratum_dimension(sample: &StratumSample, tol: &ToleranceConfig) -> Result<DimensionReport> {
    let label = &sample.label;
    let field = label.field();
    let n = label.ambient_n();
    let span = tangent_span(sample)?;
    let dim = ambient_real_dim(field, n);
    let mut rows = RMatrix::zeros(span.len(), dim);
    for (i, m) in span.iter().enumerate() {
        let v = algebra_coords(field, n, m);
        rows.row_mut(i).copy_from(&v.transpose());
    }
    let measured = numerical_rank_r(&rows, tol);
    Ok(DimensionReport {
        measured,
        closed_form: closed_form_dimension(label),
    })
}

/// True iff this label is the unique top stratum of its family.
pub fn is_top_label(label: &StratumLabel) -> bool {
    let n = label.ambient_n();
    match label {
        StratumLabel::Nilpotent { partition, .. } => partition.is_trivial(),
        StratumLabel::CenterC { xi } => xi.all_singleton() && xi.weight() == n,
        StratumLabel::CenterR { xi, q } => {
            xi.all_singleton() && xi.weight() == n / 2 && q.weight() == n % 2
        }
        StratumLabel::CenterH { xi, q } => xi.all_singleton() && xi.weight() == n && q.is_empty(),
    }
}

/// Closed-form real dimension, populated only for the top strata:
/// `n^2 - n` (R), `2(n^2 - n)` (C), `4n^2 - 4n` (H) for the nilpotent kind;
/// `n^2 - ceil(n/2)` (R), `2n^2 - n` (C), `4n^2 - n` (H) for the center kind.
pub fn closed_form_dimension(label: &StratumLabel) -> Option<usize> {
    if !is_top_label(label) {
        return None;
    }
    let n = label.ambient_n();
    Some(match label {
        StratumLabel::Nilpotent { field, .. } => match field {
            Field::R => n * n - n,
            Field::C => 2 * (n * n - n),
            Field::H => 4 * n * n - 4 * n,
        },
        StratumLabel::CenterC { .. } => 2 * n * n - n,
        StratumLabel::CenterR { .. } => n * n - n.div_ceil(2),
        StratumLabel::CenterH { .. } => 4 * n * n - n,
    })
}

/// Ambient real dimension minus measured dimension. The sample is drawn with
/// the given seed; per the dimension-independence property the result does
/// not depend on it.
pub fn stratum_codim(label: &StratumLabel, seed: u64, tol: &ToleranceConfig) -> Result<usize> {
    let sample = sample(label, seed, tol)?;
    let report = stratum_dimension(&sample, tol)?;
    let ambient = ambient_real_dim(label.field(), label.ambient_n());
    if report.measured > ambient {
        return Err(Error::ToleranceFailure(format!(
            "measured dimension {} exceeds ambient {ambient}",
            report.measured
        )));
    }
    Ok(ambient - report.measured)
}
