use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generic::family::ParametricFamily;
use crate::linalg::{eigenvalues_c, power_traces_c, singular_values_c};
use crate::mat::{frob_norm_c, CMatrix};

/// Continuous proxies for "the matrix satisfies a spectral condition": each
/// is nonnegative, continuous in the matrix, and zero exactly on the target
/// set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceProxy {
    /// Kernel of dimension at least `d`: the d-th smallest singular value.
    KernelDim(usize),
    /// Generalized kernel of dimension at least `d`: the d-th smallest
    /// eigenvalue modulus. Note eigenvalue moduli of defective clusters are
    /// not Lipschitz, so this proxy cannot certify defective hits to high
    /// precision; see `Nilpotency`.
    GeneralizedKernelDim(usize),
    /// The whole matrix is nilpotent: scaled residual of the power traces
    /// `tr(M^k), k = 1..dim`. Smooth in the entries and stable for defective
    /// matrices, unlike eigenvalue-based proxies.
    Nilpotency,
    /// Center subspace of dimension at least `d` (counting eigenvalues with
    /// vanishing real part): the d-th smallest `|Re lambda|`.
    CenterDim(usize),
    /// Purely imaginary spectrum: `max |Re lambda|`.
    CenterAll,
}

/// Evaluates a proxy on a matrix in the complex picture.
pub fn matrix_distance(m: &CMatrix, proxy: DistanceProxy) -> Result<f64> {
    let dim = m.nrows();
    Ok(match proxy {
        DistanceProxy::KernelDim(d) => {
            let mut sv = singular_values_c(m);
            sv.sort_by(f64::total_cmp);
            sv.get(d.saturating_sub(1).min(dim - 1)).copied().unwrap_or(0.0)
        }
        DistanceProxy::GeneralizedKernelDim(d) => {
            let mut mods: Vec<f64> = eigenvalues_c(m)?.iter().map(|z| z.norm()).collect();
            mods.sort_by(f64::total_cmp);
            mods.get(d.saturating_sub(1).min(dim - 1)).copied().unwrap_or(0.0)
        }
        DistanceProxy::Nilpotency => {
            let scale = frob_norm_c(m).max(1.0);
            let traces = power_traces_c(m, dim);
            let mut acc = 0.0;
            let mut sk = 1.0;
            for t in &traces {
                sk *= scale;
                let r = t.norm() / sk;
                acc += r * r;
            }
            (acc / dim as f64).sqrt()
        }
        DistanceProxy::CenterDim(d) => {
            let mut res: Vec<f64> = eigenvalues_c(m)?.iter().map(|z| z.re.abs()).collect();
            res.sort_by(f64::total_cmp);
            res.get(d.saturating_sub(1).min(dim - 1)).copied().unwrap_or(0.0)
        }
        DistanceProxy::CenterAll => eigenvalues_c(m)?
            .iter()
            .map(|z| z.re.abs())
            .fold(0.0, f64::max),
    })
}

/// Distance proxy of a family at a parameter point.
pub fn stratum_distance(f: &ParametricFamily, lambda: &[f64], proxy: DistanceProxy) -> Result<f64> {
    matrix_distance(&f.eval(lambda), proxy)
}
