use nalgebra::Schur;

use crate::error::{Error, Result};
use crate::mat::{complexify, frob_norm_c, CMatrix, RMatrix, C64};
use crate::tol::ToleranceConfig;

/// Eigenvalues clustered at the configured radius, with algebraic
/// multiplicities. Cluster representatives are multiplicity-weighted means
/// and are pairwise separated by more than the clustering radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset {
    pub eigenvalues: Vec<(C64, usize)>,
}

impl SpectrumMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }
}

/// Eigenvalues of a complex matrix via its Schur form, in an unspecified
/// order.
pub fn eigenvalues_c(m: &CMatrix) -> Result<Vec<C64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = m.nrows();
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 0).ok_or(Error::EigenFailure)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Eigenvalues of a real matrix; the result is exactly closed under complex
/// conjugation.
pub fn eigenvalues_r(m: &RMatrix) -> Result<Vec<C64>> {
    let mut ev = eigenvalues_c(&complexify(m))?;
    // Symmetrize: pair each eigenvalue with a conjugate partner so the
    // multiset is exactly conjugation-closed despite rounding.
    let mut out: Vec<C64> = Vec::with_capacity(ev.len());
    ev.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    // Greedy pairing from the largest |Im| down.
    let mut used = vec![false; ev.len()];
    for i in (0..ev.len()).rev() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = ev[i];
        if z.im == 0.0 {
            out.push(z);
            continue;
        }
        // find nearest unused conjugate partner
        let mut best: Option<(usize, f64)> = None;
        for j in (0..i).rev() {
            if used[j] {
                continue;
            }
            let d = (ev[j] - z.conj()).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= 1e-7 * (1.0 + z.norm()) => {
                used[j] = true;
                let re = 0.5 * (z.re + ev[j].re);
                let im = 0.5 * (z.im.abs() + ev[j].im.abs());
                out.push(C64::new(re, im));
                out.push(C64::new(re, -im));
            }
            _ => {
                // Isolated nearly-real eigenvalue: flatten its imaginary dust.
                out.push(C64::new(z.re, 0.0));
            }
        }
    }
    Ok(out)
}

/// Single-linkage clustering of a list of complex values at the given radius.
pub(crate) fn cluster_values(values: &[C64], radius: f64) -> Vec<(C64, usize)> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<(C64, usize)> = groups
        .values()
        .map(|idx| {
            let sum: C64 = idx.iter().map(|&i| values[i]).sum();
            (sum / idx.len() as f64, idx.len())
        })
        .collect();
    out.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    out
}

/// Clustered spectrum of a complex matrix.
pub fn spectrum_c(m: &CMatrix, tol: &ToleranceConfig) -> Result<SpectrumMultiset> {
    let ev = eigenvalues_c(m)?;
    let radius = tol.cluster_radius(frob_norm_c(m));
    Ok(SpectrumMultiset {
        eigenvalues: cluster_values(&ev, radius),
    })
}

/// Clustered spectrum of a real matrix; closed under conjugation.
pub fn spectrum_r(m: &RMatrix, tol: &ToleranceConfig) -> Result<SpectrumMultiset> {
    let ev = eigenvalues_r(m)?;
    let radius = tol.cluster_radius(m.norm());
    Ok(SpectrumMultiset {
        eigenvalues: cluster_values(&ev, radius),
    })
}
