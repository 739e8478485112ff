use crate::error::{Error, Result};
use crate::linalg::rank::numerical_rank_c_with_floor;
use crate::linalg::spectrum::spectrum_c;
use crate::mat::{ensure_square_c, frob_norm_c, CMatrix, C64};
use crate::strata::Partition;
use crate::tol::ToleranceConfig;

/// Jordan block structure of `m` at the eigenvalue `lambda`, recovered from
/// the rank staircase of powers of `m - lambda*Id`.
///
/// With `r_k = rank((m - lambda)^k)` and `r_0 = n`, the number of blocks of
/// size `s` is `Q_s = r_{s-1} - 2 r_s + r_{s+1}`. The returned partition sums
/// to the algebraic multiplicity of the eigenvalue cluster at `lambda`.
pub fn jordan_structure(m: &CMatrix, lambda: C64, tol: &ToleranceConfig) -> Result<Partition> {
    let n = ensure_square_c(m)?;
    let radius = tol.cluster_radius(frob_norm_c(m));
    let spec = spectrum_c(m, tol)?;
    let cluster = spec
        .eigenvalues
        .iter()
        .find(|(v, _)| (v - lambda).norm() <= radius.max(tol.cluster_radius(lambda.norm())))
        .ok_or_else(|| Error::NotAnEigenvalue(format!("{lambda}")))?;
    let mult = cluster.1;

    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] -= cluster.0;
    }
    let norm = frob_norm_c(&shifted);
    if norm > 0.0 {
        shifted /= C64::new(norm, 0.0);
    }

    // r[k] = rank(shifted^k); the staircase flattens once k exceeds the
    // largest block size. Since `shifted` is normalized, an absolute floor
    // keeps the shrinking powers of defective clusters from reporting
    // perturbation dust as rank.
    let mut ranks = vec![n];
    let mut power = CMatrix::identity(n, n);
    for _ in 1..=(mult + 1) {
        power = &power * &shifted;
        let r = numerical_rank_c_with_floor(&power, tol, tol.rank_tol);
        ranks.push(r);
        if ranks.len() >= 2 && ranks[ranks.len() - 1] == ranks[ranks.len() - 2] {
            break;
        }
    }
    let stable = *ranks.last().unwrap();
    if n - stable != mult {
        return Err(Error::ToleranceFailure(format!(
            "staircase multiplicity {} disagrees with clustered multiplicity {}",
            n - stable,
            mult
        )));
    }
    while ranks.len() < mult + 2 {
        ranks.push(stable);
    }

    let mut parts = Vec::new();
    for s in 1..=mult {
        let q = ranks[s - 1] as i64 - 2 * ranks[s] as i64 + ranks[s + 1] as i64;
        if q < -1 {
            return Err(Error::ToleranceFailure(format!(
                "negative block count Q_{s} = {q}"
            )));
        }
        for _ in 0..q.max(0) {
            parts.push(s);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let p = Partition::new(parts)?;
    if p.weight() != mult {
        return Err(Error::ToleranceFailure(format!(
            "partition weight {} does not match multiplicity {}",
            p.weight(),
            mult
        )));
    }
    Ok(p)
}
