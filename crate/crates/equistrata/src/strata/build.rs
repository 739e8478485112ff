use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::QuatStructured;
use crate::mat::{block_diag_c, complexify, realify, CMatrix, RMatrix, C64};
use crate::strata::label::{Field, StratumLabel};
use crate::strata::partition::{Partition, XiLabel};
use crate::tol::ToleranceConfig;

/// The upper-bidiagonal Jordan block `B_n(lambda)`.
pub fn jordan_block(n: usize, lambda: C64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = lambda;
        if i + 1 < n {
            m[(i, i + 1)] = C64::new(1.0, 0.0);
        }
    }
    m
}

/// `B_{n,p}(lambda)`: block diagonal of Jordan blocks with sizes from `p`.
pub fn block_diag_partition(p: &Partition, lambda: C64) -> Result<CMatrix> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty partition".into()));
    }
    let blocks: Vec<CMatrix> = p.parts().iter().map(|&s| jordan_block(s, lambda)).collect();
    Ok(block_diag_c(&blocks))
}

/// `B_xi(x)`: block diagonal of `B_{s_j, p_j}(x_j i)`. The entries of `x`
/// must be pairwise distinct unless `x` is identically zero.
pub fn build_b_xi(xi: &XiLabel, x: &[f64]) -> Result<CMatrix> {
    if x.len() != xi.block_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} parameters, got {}",
            xi.block_count(),
            x.len()
        )));
    }
    let all_zero = x.iter().all(|&v| v == 0.0);
    if !all_zero {
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                if x[i] == x[j] {
                    return Err(Error::InvalidParameter(format!(
                        "parameters must be pairwise distinct, got x[{i}] = x[{j}] = {}",
                        x[i]
                    )));
                }
            }
        }
    }
    build_b_xi_unchecked(xi, x)
}

/// `B_xi(x)` without the admissibility check on `x`; used by local solvers
/// whose iterates may pass through inadmissible parameter values.
pub(crate) fn build_b_xi_unchecked(xi: &XiLabel, x: &[f64]) -> Result<CMatrix> {
    let blocks: Vec<CMatrix> = xi
        .inner
        .iter()
        .zip(x)
        .map(|(p, &v)| block_diag_partition(p, C64::new(0.0, v)))
        .collect::<Result<_>>()?;
    Ok(block_diag_c(&blocks))
}

/// `I_p(z)`: block-scalar matrix with `z_j Id_{s_j}` blocks.
pub fn build_i_p(p: &Partition, z: &[C64]) -> Result<CMatrix> {
    if z.len() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} block scalars, got {}",
            p.len(),
            z.len()
        )));
    }
    let blocks: Vec<CMatrix> = p
        .parts()
        .iter()
        .zip(z)
        .map(|(&s, &v)| CMatrix::identity(s, s) * v)
        .collect();
    Ok(block_diag_c(&blocks))
}

/// The conjugation matrix `Z_{n,m}` realifying `diag(Y, conj(Y), W)`.
pub fn z_nm(n: usize, m: usize) -> CMatrix {
    let mut z = CMatrix::zeros(n, n);
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    for a in 0..m {
        z[(a, a)] = one;
        z[(a, m + a)] = i;
        z[(m + a, a)] = i;
        z[(m + a, m + a)] = one;
    }
    for a in 2 * m..n {
        z[(a, a)] = one;
    }
    z
}

/// Closed-form inverse of `z_nm`.
pub fn z_nm_inv(n: usize, m: usize) -> CMatrix {
    let mut z = CMatrix::zeros(n, n);
    let half = C64::new(0.5, 0.0);
    let mih = C64::new(0.0, -0.5);
    let one = C64::new(1.0, 0.0);
    for a in 0..m {
        z[(a, a)] = half;
        z[(a, m + a)] = mih;
        z[(m + a, a)] = mih;
        z[(m + a, m + a)] = half;
    }
    for a in 2 * m..n {
        z[(a, a)] = one;
    }
    z
}

fn check_w_xi(xi: &XiLabel, x: &[f64]) -> Result<()> {
    if x.len() != xi.block_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} parameters, got {}",
            xi.block_count(),
            x.len()
        )));
    }
    for (i, &v) in x.iter().enumerate() {
        if v <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "parameter x[{i}] = {v} must be positive"
            )));
        }
    }
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            if x[i] == x[j] {
                return Err(Error::InvalidParameter(
                    "parameters must be pairwise distinct".into(),
                ));
            }
        }
    }
    Ok(())
}

/// `D_{n,xi,q}(x) = diag(B_xi(x), conj(B_xi(x)), B_{n-2m,q}(0))`.
pub fn build_d_matrix(n: usize, xi: &XiLabel, q: &Partition, x: &[f64]) -> Result<CMatrix> {
    let m = xi.weight();
    if 2 * m + q.weight() != n {
        return Err(Error::InvalidLabel(format!(
            "2*{m} + |q| = {} does not equal n = {n}",
            2 * m + q.weight()
        )));
    }
    check_w_xi(xi, x)?;
    let b = build_b_xi(xi, x)?;
    let b_conj = b.map(|v| v.conj());
    let mut blocks = vec![b, b_conj];
    if !q.is_empty() {
        blocks.push(block_diag_partition(q, C64::new(0.0, 0.0))?);
    }
    Ok(block_diag_c(&blocks))
}

/// Real canonical representative `Z_{n,m} D_{n,xi,q}(x) Z_{n,m}^{-1}` of a
/// center stratum in mat(R, n). The imaginary residue is checked against
/// `residual_tol` and truncated.
pub fn build_real_center_rep(
    n: usize,
    xi: &XiLabel,
    q: &Partition,
    x: &[f64],
    tol: &ToleranceConfig,
) -> Result<RMatrix> {
    let m = xi.weight();
    if 2 * m > n {
        return Err(Error::InvalidLabel(format!("2m = {} exceeds n = {n}", 2 * m)));
    }
    let d = build_d_matrix(n, xi, q, x)?;
    let conj = z_nm(n, m) * d * z_nm_inv(n, m);
    let scale = x.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    realify(&conj, tol.residual_tol * scale)
}

/// Real conjugated direction matrix `Z_{n,m} Ibar_xi(i * e_j) Z_{n,m}^{-1}`:
/// the tangent direction that moves the j-th imaginary pair.
pub fn real_center_direction(n: usize, xi: &XiLabel, j: usize) -> Result<RMatrix> {
    let m = xi.weight();
    let l = xi.block_count();
    if j >= l {
        return Err(Error::InvalidParameter(format!("direction {j} out of range")));
    }
    let mut z = vec![C64::new(0.0, 0.0); l];
    z[j] = C64::new(0.0, 1.0);
    let ip = build_i_p(&xi.outer, &z)?;
    let mut full = CMatrix::zeros(n, n);
    full.view_mut((0, 0), (m, m)).copy_from(&ip);
    full.view_mut((m, m), (m, m)).copy_from(&ip.map(|v| v.conj()));
    let conj = z_nm(n, m) * full * z_nm_inv(n, m);
    realify(&conj, 1e-12)
}

/// `H_{xi,q}(x) = diag(B_xi(x), B_{n-m,q}(0))`, the upper-left half of the
/// quaternionic center representative.
pub fn build_h_half(n: usize, xi: &XiLabel, q: &Partition, x: &[f64]) -> Result<CMatrix> {
    let m = xi.weight();
    if m + q.weight() != n {
        return Err(Error::InvalidLabel(format!(
            "{m} + |q| = {} does not equal n = {n}",
            m + q.weight()
        )));
    }
    check_w_xi(xi, x)?;
    let b = build_b_xi(xi, x)?;
    let mut blocks = vec![b];
    if !q.is_empty() {
        blocks.push(block_diag_partition(q, C64::new(0.0, 0.0))?);
    }
    Ok(block_diag_c(&blocks))
}

/// `Htilde_{xi,q}(x) = diag(H, conj(H))`, a quaternionic-structured matrix
/// with spectrum `{±x_j i} ∪ {0}`.
pub fn build_quat_center_rep(
    n: usize,
    xi: &XiLabel,
    q: &Partition,
    x: &[f64],
) -> Result<QuatStructured> {
    let m = xi.weight();
    if m > n || m == 0 {
        return Err(Error::InvalidLabel(format!("need 1 <= m <= n, got m = {m}")));
    }
    let h = build_h_half(n, xi, q, x)?;
    QuatStructured::from_blocks(&h, &CMatrix::zeros(n, n))
}

/// Quaternionic tangent direction `Itilde_xi(i * e_j)`.
pub fn quat_center_direction(n: usize, xi: &XiLabel, j: usize) -> Result<QuatStructured> {
    let m = xi.weight();
    let l = xi.block_count();
    if j >= l {
        return Err(Error::InvalidParameter(format!("direction {j} out of range")));
    }
    let mut z = vec![C64::new(0.0, 0.0); l];
    z[j] = C64::new(0.0, 1.0);
    let ip = build_i_p(&xi.outer, &z)?;
    let mut x_block = CMatrix::zeros(n, n);
    x_block.view_mut((0, 0), (m, m)).copy_from(&ip);
    QuatStructured::from_blocks(&x_block, &CMatrix::zeros(n, n))
}

/// Model matrix of a label at raw parameter values, without admissibility
/// checks; the complex picture in every field.
pub(crate) fn model_matrix_unchecked(
    label: &StratumLabel,
    x: &[f64],
) -> Result<CMatrix> {
    match label {
        StratumLabel::Nilpotent { field, partition } => {
            let b = block_diag_partition(partition, C64::new(0.0, 0.0))?;
            match field {
                Field::R | Field::C => Ok(b),
                Field::H => {
                    let n = partition.weight();
                    let mut h = CMatrix::zeros(2 * n, 2 * n);
                    h.view_mut((0, 0), (n, n)).copy_from(&b);
                    h.view_mut((n, n), (n, n)).copy_from(&b);
                    Ok(h)
                }
            }
        }
        StratumLabel::CenterC { xi } => build_b_xi_unchecked(xi, x),
        StratumLabel::CenterR { xi, q } => {
            let n = label.ambient_n();
            let m = xi.weight();
            let b = build_b_xi_unchecked(xi, x)?;
            let b_conj = b.map(|v| v.conj());
            let mut blocks = vec![b, b_conj];
            if !q.is_empty() {
                blocks.push(block_diag_partition(q, C64::new(0.0, 0.0))?);
            }
            let d = block_diag_c(&blocks);
            let conj = z_nm(n, m) * d * z_nm_inv(n, m);
            // Exactly real by construction up to rounding.
            Ok(conj.map(|v| C64::new(v.re, 0.0)))
        }
        StratumLabel::CenterH { xi, q } => {
            let n = label.ambient_n();
            let b = build_b_xi_unchecked(xi, x)?;
            let mut blocks = vec![b];
            if !q.is_empty() {
                blocks.push(block_diag_partition(q, C64::new(0.0, 0.0))?);
            }
            let h = block_diag_c(&blocks);
            let mut out = CMatrix::zeros(2 * n, 2 * n);
            out.view_mut((0, 0), (n, n)).copy_from(&h);
            out.view_mut((n, n), (n, n)).copy_from(&h.map(|v| v.conj()));
            Ok(out)
        }
    }
}

/// Derivatives of [`model_matrix_unchecked`] in the stratum parameters.
pub(crate) fn model_derivatives(label: &StratumLabel) -> Result<Vec<CMatrix>> {
    match label {
        StratumLabel::Nilpotent { .. } => Ok(Vec::new()),
        StratumLabel::CenterC { xi } => {
            let l = xi.block_count();
            (0..l)
                .map(|j| {
                    let mut z = vec![C64::new(0.0, 0.0); l];
                    z[j] = C64::new(0.0, 1.0);
                    build_i_p(&xi.outer, &z)
                })
                .collect()
        }
        StratumLabel::CenterR { xi, .. } => {
            let n = label.ambient_n();
            (0..xi.block_count())
                .map(|j| real_center_direction(n, xi, j).map(|m| complexify(&m)))
                .collect()
        }
        StratumLabel::CenterH { xi, .. } => {
            let n = label.ambient_n();
            (0..xi.block_count())
                .map(|j| quat_center_direction(n, xi, j).map(|m| m.into_matrix()))
                .collect()
        }
    }
}

/// A stratum representative together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct StratumSample {
    pub label: StratumLabel,
    pub parameters: Vec<f64>,
    pub matrix: StratumMatrix,
}

/// Representative matrices live in different algebras depending on the field.
#[derive(Debug, Clone)]
pub enum StratumMatrix {
    Real(RMatrix),
    Complex(CMatrix),
    Quat(QuatStructured),
}

impl StratumMatrix {
    /// The matrix as stored (real matrices are complexified).
    pub fn as_complex(&self) -> CMatrix {
        match self {
            StratumMatrix::Real(m) => complexify(m),
            StratumMatrix::Complex(m) => m.clone(),
            StratumMatrix::Quat(z) => z.matrix().clone(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            StratumMatrix::Real(_) => Field::R,
            StratumMatrix::Complex(_) => Field::C,
            StratumMatrix::Quat(_) => Field::H,
        }
    }
}

/// Draws admissible stratum parameters: `x_j = (j+1)/k` plus a small seeded
/// jitter, guaranteeing positivity and pairwise separation.
pub fn sample_parameters(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|j| (j + 1) as f64 / count.max(1) as f64 + 1e-2 * rng.random::<f64>() / count.max(1) as f64)
        .collect()
}

/// Builds the canonical representative of a stratum with seeded parameters.
pub fn sample(label: &StratumLabel, seed: u64, tol: &ToleranceConfig) -> Result<StratumSample> {
    label.validate()?;
    match label {
        StratumLabel::Nilpotent { field, partition } => {
            let b = block_diag_partition(partition, C64::new(0.0, 0.0))?;
            let matrix = match field {
                Field::R => StratumMatrix::Real(realify(&b, 0.0)?),
                Field::C => StratumMatrix::Complex(b),
                Field::H => {
                    let n = partition.weight();
                    let mut h = CMatrix::zeros(2 * n, 2 * n);
                    h.view_mut((0, 0), (n, n)).copy_from(&b);
                    h.view_mut((n, n), (n, n)).copy_from(&b);
                    StratumMatrix::Quat(QuatStructured::new(h, tol)?)
                }
            };
            Ok(StratumSample {
                label: label.clone(),
                parameters: Vec::new(),
                matrix,
            })
        }
        StratumLabel::CenterC { xi } => {
            let x = sample_parameters(xi.block_count(), seed);
            let b = build_b_xi(xi, &x)?;
            Ok(StratumSample {
                label: label.clone(),
                parameters: x,
                matrix: StratumMatrix::Complex(b),
            })
        }
        StratumLabel::CenterR { xi, q } => {
            let n = label.ambient_n();
            let x = sample_parameters(xi.block_count(), seed);
            let m = build_real_center_rep(n, xi, q, &x, tol)?;
            Ok(StratumSample {
                label: label.clone(),
                parameters: x,
                matrix: StratumMatrix::Real(m),
            })
        }
        StratumLabel::CenterH { xi, q } => {
            let n = label.ambient_n();
            let x = sample_parameters(xi.block_count(), seed);
            let m = build_quat_center_rep(n, xi, q, &x)?;
            Ok(StratumSample {
                label: label.clone(),
                parameters: x,
                matrix: StratumMatrix::Quat(m),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues_c, is_quat_structured, quat_jordan_pairing_check};

    #[test]
    fn jordan_block_layout() {
        let b = jordan_block(2, C64::new(0.0, 0.0));
        assert_eq!(b[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(b[(1, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn block_diag_of_ones_is_zero() {
        let p = Partition::new(vec![1, 1]).unwrap();
        let b = block_diag_partition(&p, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(b, CMatrix::zeros(2, 2));
    }

    #[test]
    fn b_xi_diag_case() {
        let xi = XiLabel::new(
            Partition::new(vec![1, 1]).unwrap(),
            vec![
                Partition::new(vec![1]).unwrap(),
                Partition::new(vec![1]).unwrap(),
            ],
        )
        .unwrap();
        let b = build_b_xi(&xi, &[1.0, -1.0]).unwrap();
        assert_eq!(b[(0, 0)], C64::new(0.0, 1.0));
        assert_eq!(b[(1, 1)], C64::new(0.0, -1.0));
    }

    #[test]
    fn b_xi_rejects_repeats() {
        let xi = XiLabel::new(
            Partition::new(vec![1, 1]).unwrap(),
            vec![
                Partition::new(vec![1]).unwrap(),
                Partition::new(vec![1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(build_b_xi(&xi, &[2.0, 2.0]).is_err());
    }

    #[test]
    fn i_p_block_scalars() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let z = [C64::new(3.0, 0.0), C64::new(-1.0, 0.0)];
        let m = build_i_p(&p, &z).unwrap();
        assert_eq!(m[(0, 0)], z[0]);
        assert_eq!(m[(1, 1)], z[0]);
        assert_eq!(m[(2, 2)], z[1]);
    }

    #[test]
    fn real_center_rep_2x2_is_rotation() {
        // n=2, m=1, xi=((1);(1)), q empty, x=(w) -> [[0, w], [-w, 0]]
        let xi = XiLabel::new(
            Partition::new(vec![1]).unwrap(),
            vec![Partition::new(vec![1]).unwrap()],
        )
        .unwrap();
        let tol = ToleranceConfig::default();
        let w = 0.75;
        let m = build_real_center_rep(2, &xi, &Partition::empty(), &[w], &tol).unwrap();
        let expect = RMatrix::from_row_slice(2, 2, &[0.0, w, -w, 0.0]);
        assert!((m - expect).norm() < 1e-12);
    }

    #[test]
    fn real_center_rep_3x3_spectrum() {
        let xi = XiLabel::new(
            Partition::new(vec![1]).unwrap(),
            vec![Partition::new(vec![1]).unwrap()],
        )
        .unwrap();
        let tol = ToleranceConfig::default();
        let q = Partition::new(vec![1]).unwrap();
        let m = build_real_center_rep(3, &xi, &q, &[1.0], &tol).unwrap();
        let mut ev = eigenvalues_c(&complexify(&m)).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((ev[1] - C64::new(0.0, 0.0)).norm() < 1e-10);
        assert!((ev[2] - C64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn real_center_rep_rejects_oversized_m() {
        let xi = XiLabel::new(
            Partition::new(vec![2]).unwrap(),
            vec![Partition::new(vec![2]).unwrap()],
        )
        .unwrap();
        let tol = ToleranceConfig::default();
        // n = 3 < 2m = 4
        assert!(build_real_center_rep(3, &xi, &Partition::empty(), &[1.0], &tol).is_err());
    }

    #[test]
    fn quat_center_rep_small() {
        let tol = ToleranceConfig::default();
        // n = m = 1: diag(i, -i)
        let xi = XiLabel::new(
            Partition::new(vec![1]).unwrap(),
            vec![Partition::new(vec![1]).unwrap()],
        )
        .unwrap();
        let z = build_quat_center_rep(1, &xi, &Partition::empty(), &[1.0]).unwrap();
        assert!((z.matrix()[(0, 0)] - C64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((z.matrix()[(1, 1)] - C64::new(0.0, -1.0)).norm() < 1e-14);
        assert!(is_quat_structured(z.matrix(), &tol).unwrap());
        assert!(quat_jordan_pairing_check(&z, &tol).unwrap());

        // n=2, m=1, q=(1), x=(2)
        let q = Partition::new(vec![1]).unwrap();
        let z = build_quat_center_rep(2, &xi, &q, &[2.0]).unwrap();
        assert!(is_quat_structured(z.matrix(), &tol).unwrap());
        assert!(quat_jordan_pairing_check(&z, &tol).unwrap());
    }

    #[test]
    fn sampled_parameters_admissible() {
        let x = sample_parameters(6, 7);
        for i in 0..x.len() {
            assert!(x[i] > 0.0);
            for j in (i + 1)..x.len() {
                assert!((x[i] - x[j]).abs() > 1e-4);
            }
        }
    }
}
