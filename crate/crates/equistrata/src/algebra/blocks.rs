use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{DivisionType, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::mat::RMatrix;
use crate::tol::ToleranceConfig;

const SPLIT_RETRIES: usize = 16;

/// One simple two-sided ideal of the semisimple quotient.
#[derive(Debug, Clone)]
pub struct SemisimpleBlock {
    /// Central idempotent cutting out the block (coordinates in `S`).
    pub idempotent: DVector<f64>,
    /// Orthonormal coordinate basis of `e S e`.
    pub basis: Vec<DVector<f64>>,
}

/// Splits the semisimple quotient into its simple blocks.
///
/// A random element of the center is drawn; the spectral idempotents of its
/// minimal polynomial split the unit into the primitive central idempotents.
/// Random draws that fail to generate the center (or land too close to a
/// degenerate configuration) are rejected and retried up to a fixed bound.
pub fn semisimple_blocks(
    quot: &QuotientAlgebra,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Vec<SemisimpleBlock>> {
    let center = quot.center(tol)?;
    let zdim = center.len();
    let unit = quot.unit();
    let idems: Vec<DVector<f64>> = if zdim == 1 {
        vec![unit.clone()]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for _ in 0..SPLIT_RETRIES {
            let z: DVector<f64> = center.iter().fold(DVector::zeros(quot.dim()), |acc, c| {
                let g: f64 = rng.sample(StandardNormal);
                acc + c * g
            });
            match quot.minimal_polynomial(&z, &unit) {
                Ok(mp) if mp.len() == zdim => {
                    if let Ok(idems) = quot.spectral_idempotents(&z, &unit, tol) {
                        found = Some(idems);
                        break;
                    }
                }
                _ => continue,
            }
        }
        found.ok_or(Error::SplitRetriesExhausted(SPLIT_RETRIES))?
    };
    let mut blocks = Vec::new();
    for e in idems {
        let basis = corner_basis(quot, &e, tol);
        if basis.is_empty() {
            return Err(Error::ToleranceFailure("empty simple block".into()));
        }
        blocks.push(SemisimpleBlock {
            idempotent: e,
            basis,
        });
    }
    // Deterministic block order: by dimension, then by idempotent coords.
    blocks.sort_by(|a, b| {
        a.basis
            .len()
            .cmp(&b.basis.len())
            .then_with(|| a.idempotent.iter().partial_cmp(b.idempotent.iter()).unwrap())
    });
    Ok(blocks)
}

fn corner_basis(
    quot: &QuotientAlgebra,
    e: &DVector<f64>,
    tol: &ToleranceConfig,
) -> Vec<DVector<f64>> {
    let s = quot.dim();
    let images: Vec<DVector<f64>> = (0..s)
        .map(|i| {
            let xi = DVector::from_fn(s, |r, _| if r == i { 1.0 } else { 0.0 });
            quot.mul(e, &quot.mul(&xi, e))
        })
        .collect();
    let mut m = RMatrix::zeros(s, s);
    for (i, v) in images.iter().enumerate() {
        m.row_mut(i).copy_from(&v.transpose());
    }
    let svd = m.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let vt = svd.v_t.expect("requested");
    let mut out = Vec::new();
    for (i, &sv) in svd.singular_values.iter().enumerate() {
        if smax > 0.0 && sv > tol.rank_tol.sqrt() * smax {
            out.push(vt.row(i).transpose().into_owned());
        }
    }
    out
}

/// Division type and matrix size of a simple block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockType {
    pub division: DivisionType,
    /// `m` with the block isomorphic to mat(D, m).
    pub multiplicity: usize,
}

/// Determines the division algebra `D` and the size `m` of a simple block
/// `e S e ~ mat(D, m)` by descending through corners cut out by spectral
/// idempotents of random elements. A corner that refuses to split across the
/// retry budget is a division algebra; its real dimension must be 1, 2 or 4.
pub fn block_type(
    quot: &QuotientAlgebra,
    block: &SemisimpleBlock,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<BlockType> {
    let block_dim = block.basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_b10c);
    let mut unit = block.idempotent.clone();
    let mut basis = block.basis.clone();
    loop {
        if basis.len() == 1 {
            break;
        }
        let mut split = None;
        for _ in 0..SPLIT_RETRIES {
            let b: DVector<f64> = basis.iter().fold(DVector::zeros(quot.dim()), |acc, v| {
                let g: f64 = rng.sample(StandardNormal);
                acc + v * g
            });
            let idems = match quot.spectral_idempotents(&b, &unit, tol) {
                Ok(i) => i,
                Err(_) => continue,
            };
            if idems.len() < 2 {
                continue;
            }
            // Prefer the smallest resulting corner to descend fast.
            let mut best: Option<(usize, DVector<f64>, Vec<DVector<f64>>)> = None;
            for e in idems {
                let corner = corner_span(quot, &e, &basis, tol);
                let d = corner.len();
                if d == 0 {
                    continue;
                }
                if best.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
                    best = Some((d, e, corner));
                }
            }
            if let Some((d, e, corner)) = best {
                if d < basis.len() {
                    split = Some((e, corner));
                    break;
                }
            }
        }
        match split {
            Some((e, corner)) => {
                unit = e;
                basis = corner;
            }
            None => break,
        }
    }
    let d = basis.len();
    let division = match d {
        1 => DivisionType::R,
        2 => DivisionType::C,
        4 => DivisionType::H,
        other => {
            return Err(Error::ToleranceFailure(format!(
                "terminal corner has dimension {other}, not in {{1, 2, 4}}"
            )))
        }
    };
    let m2 = block_dim / d;
    let m = (m2 as f64).sqrt().round() as usize;
    if m * m * d != block_dim {
        return Err(Error::ToleranceFailure(format!(
            "block dimension {block_dim} is not m^2 * {d}"
        )));
    }
    Ok(BlockType {
        division,
        multiplicity: m,
    })
}

fn corner_span(
    quot: &QuotientAlgebra,
    e: &DVector<f64>,
    ambient: &[DVector<f64>],
    tol: &ToleranceConfig,
) -> Vec<DVector<f64>> {
    let images: Vec<DVector<f64>> = ambient
        .iter()
        .map(|x| quot.mul(e, &quot.mul(x, e)))
        .collect();
    let rows = images.len();
    let cols = quot.dim();
    let mut m = RMatrix::zeros(rows, cols);
    for (i, v) in images.iter().enumerate() {
        m.row_mut(i).copy_from(&v.transpose());
    }
    let svd = m.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let vt = svd.v_t.expect("requested");
    let mut out = Vec::new();
    for (i, &sv) in svd.singular_values.iter().enumerate() {
        if smax > 0.0 && sv > tol.rank_tol.sqrt() * smax {
            out.push(vt.row(i).transpose().into_owned());
        }
    }
    out
}

/// Newton-polishes an approximate idempotent (idempotent modulo the
/// nilpotent radical) to an exact one via `e <- 3e^2 - 2e^3`. The iterate
/// stays in the same coset of the radical.
pub fn lift_idempotent(e0: &RMatrix, tol: &ToleranceConfig) -> Result<RMatrix> {
    let n = e0.nrows();
    let mut e = e0.clone();
    let budget = (n as f64).log2().ceil() as usize + 10;
    for _ in 0..budget {
        let sq = &e * &e;
        let defect = (&sq - &e).norm();
        if defect <= tol.residual_tol * e.norm().max(1.0) {
            return Ok(e);
        }
        e = &sq * 3.0 - &sq * &e * 2.0;
    }
    let defect = (&e * &e - &e).norm();
    if defect <= tol.residual_tol * e.norm().max(1.0) {
        Ok(e)
    } else {
        Err(Error::NonConvergence(format!(
            "idempotent lifting stalled at defect {defect:e}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{end_algebra, radical, MonoidRepresentation};

    fn quotient_of(rep: &MonoidRepresentation) -> QuotientAlgebra {
        let tol = ToleranceConfig::default();
        let end = end_algebra(rep, &tol).unwrap();
        let rad = radical(&end, &tol).unwrap();
        QuotientAlgebra::new(&end, &rad, &tol).unwrap()
    }

    #[test]
    fn full_matrix_algebra_is_one_real_block() {
        let rep = MonoidRepresentation::new(2, vec![]).unwrap();
        let q = quotient_of(&rep);
        let tol = ToleranceConfig::default();
        let blocks = semisimple_blocks(&q, 1, &tol).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].basis.len(), 4);
        let bt = block_type(&q, &blocks[0], 1, &tol).unwrap();
        assert_eq!(bt.division, DivisionType::R);
        assert_eq!(bt.multiplicity, 2);
    }

    #[test]
    fn z3_splits_into_r_and_c() {
        let g = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let rep = MonoidRepresentation::new(3, vec![g]).unwrap();
        let q = quotient_of(&rep);
        let tol = ToleranceConfig::default();
        let blocks = semisimple_blocks(&q, 1, &tol).unwrap();
        assert_eq!(blocks.len(), 2);
        let types: Vec<BlockType> = blocks
            .iter()
            .map(|b| block_type(&q, b, 1, &tol).unwrap())
            .collect();
        let dims: Vec<usize> = blocks.iter().map(|b| b.basis.len()).collect();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(types[0].division, DivisionType::R);
        assert_eq!(types[0].multiplicity, 1);
        assert_eq!(types[1].division, DivisionType::C);
        assert_eq!(types[1].multiplicity, 1);
    }

    #[test]
    fn lift_fixes_perturbed_projector() {
        let tol = ToleranceConfig::default();
        // diag(1, 0) plus a strictly upper-triangular (radical-style) term.
        let e0 = RMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.0, 0.0]);
        let e = lift_idempotent(&e0, &tol).unwrap();
        assert!((&e * &e - &e).norm() < 1e-8);
        assert!((e.trace() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn lift_identity_is_fixed_point() {
        let tol = ToleranceConfig::default();
        let id = RMatrix::identity(3, 3);
        assert_eq!(lift_idempotent(&id, &tol).unwrap(), id);
    }
}
