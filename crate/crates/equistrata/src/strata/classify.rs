use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_c, eigenvalues_r, jordan_structure};
use crate::linalg::spectrum::cluster_values;
use crate::mat::{frob_norm_c, CMatrix, C64};
use crate::strata::build::StratumMatrix;
use crate::strata::label::{Field, StratumLabel};
use crate::strata::partition::{Partition, XiLabel};
use crate::tol::ToleranceConfig;

/// Recovers the canonical stratum label of a matrix from its clustered
/// eigenvalues and per-cluster Jordan structure.
///
/// Returns `None` when the spectrum is neither all-zero (nilpotent kind) nor
/// all-imaginary (center kind). Matrices whose eigenvalues sit between one
/// and ten clustering radii from the deciding boundary are refused as
/// ambiguous rather than guessed.
pub fn classify(m: &StratumMatrix, tol: &ToleranceConfig) -> Result<Option<StratumLabel>> {
    let field = m.field();
    let mc = m.as_complex();
    let eigen = match m {
        StratumMatrix::Real(r) => eigenvalues_r(r)?,
        _ => eigenvalues_c(&mc)?,
    };
    let scale = frob_norm_c(&mc);
    let radius = tol.cluster_radius(scale);

    let zmax = eigen.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if zmax <= radius {
        return nilpotent_label(field, &mc, tol).map(Some);
    }
    if zmax <= 10.0 * radius {
        return Err(Error::AmbiguousCluster(format!(
            "largest eigenvalue modulus {zmax:e} sits at the nilpotent boundary"
        )));
    }
    let rmax = eigen.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    if rmax > 10.0 * radius {
        return Ok(None);
    }
    if rmax > radius {
        return Err(Error::AmbiguousCluster(format!(
            "largest real part {rmax:e} sits at the imaginary-axis boundary"
        )));
    }
    center_label(field, &mc, &eigen, radius, tol).map(Some)
}

fn nilpotent_label(field: Field, mc: &CMatrix, tol: &ToleranceConfig) -> Result<StratumLabel> {
    let p = jordan_structure(mc, C64::new(0.0, 0.0), tol)?;
    let partition = match field {
        Field::H => halve_partition(&p)?,
        _ => p,
    };
    Ok(StratumLabel::Nilpotent { field, partition })
}

fn halve_partition(p: &Partition) -> Result<Partition> {
    let mut counts = std::collections::BTreeMap::new();
    for &s in p.parts() {
        *counts.entry(s).or_insert(0usize) += 1;
    }
    let mut parts = Vec::new();
    for (&s, &c) in counts.iter().rev() {
        if c % 2 != 0 {
            return Err(Error::ToleranceFailure(format!(
                "quaternionic pairing violated: block size {s} appears {c} times"
            )));
        }
        for _ in 0..c / 2 {
            parts.push(s);
        }
    }
    Partition::new(parts)
}

fn center_label(
    field: Field,
    mc: &CMatrix,
    eigen: &[C64],
    radius: f64,
    tol: &ToleranceConfig,
) -> Result<StratumLabel> {
    let clusters = cluster_values(eigen, radius);
    // Guard against clusters straddling the zero boundary.
    for &(val, _) in &clusters {
        let r = val.norm();
        if r > radius && r <= 10.0 * radius {
            return Err(Error::AmbiguousCluster(format!(
                "cluster at {val} sits at the zero boundary"
            )));
        }
    }
    match field {
        Field::C => {
            let mut pairs: Vec<(usize, Partition)> = Vec::new();
            for &(val, _) in &clusters {
                let p = jordan_structure(mc, val, tol)?;
                pairs.push((p.weight(), p));
            }
            let xi = xi_from_pairs(pairs)?;
            Ok(StratumLabel::CenterC { xi })
        }
        Field::R | Field::H => {
            let mut pairs: Vec<(usize, Partition)> = Vec::new();
            let mut q_full = Partition::empty();
            for &(val, mult) in &clusters {
                if val.norm() <= radius {
                    q_full = jordan_structure(mc, C64::new(0.0, 0.0), tol)?;
                } else if val.im > 0.0 {
                    let mirror = clusters
                        .iter()
                        .find(|(w, _)| (w + val.conj()).norm() <= 2.0 * radius || (w - val.conj()).norm() <= 2.0 * radius);
                    match mirror {
                        Some(&(_, mm)) if mm == mult => {}
                        _ => {
                            return Err(Error::ToleranceFailure(format!(
                                "no conjugate cluster matching {val}"
                            )))
                        }
                    }
                    let p = jordan_structure(mc, val, tol)?;
                    pairs.push((p.weight(), p));
                }
            }
            if pairs.is_empty() {
                return Err(Error::AmbiguousCluster(
                    "center path reached with no imaginary pair".into(),
                ));
            }
            let xi = xi_from_pairs(pairs)?;
            if field == Field::R {
                Ok(StratumLabel::CenterR { xi, q: q_full })
            } else {
                let q = halve_partition(&q_full)?;
                Ok(StratumLabel::CenterH { xi, q })
            }
        }
    }
}

fn xi_from_pairs(pairs: Vec<(usize, Partition)>) -> Result<XiLabel> {
    let outer = Partition::new({
        let mut v: Vec<usize> = pairs.iter().map(|(s, _)| *s).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })?;
    // XiLabel::new canonicalizes the pairing, so feed it pairs sorted the
    // same way the outer parts were.
    let mut sorted = pairs;
    sorted.sort_by(|a, b| b.cmp(a));
    XiLabel::new(outer, sorted.into_iter().map(|(_, p)| p).collect())
}

/// Convenience wrapper: classify a matrix already complexified, given its
/// field.
pub fn classify_complex_in_field(
    field: Field,
    mc: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<Option<StratumLabel>> {
    let m = match field {
        Field::R => StratumMatrix::Real(crate::mat::realify(mc, 1e-12)?),
        Field::C => StratumMatrix::Complex(mc.clone()),
        Field::H => StratumMatrix::Quat(crate::linalg::QuatStructured::new(mc.clone(), tol)?),
    };
    classify(&m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::RMatrix;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn b2_classifies_as_nilpotent() {
        let m = StratumMatrix::Real(RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        let label = classify(&m, &tol()).unwrap().unwrap();
        assert_eq!(
            label,
            StratumLabel::Nilpotent {
                field: Field::R,
                partition: Partition::new(vec![2]).unwrap()
            }
        );
    }

    #[test]
    fn rotation_classifies_as_center() {
        let m = StratumMatrix::Real(RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let label = classify(&m, &tol()).unwrap().unwrap();
        match label {
            StratumLabel::CenterR { xi, q } => {
                assert_eq!(xi.weight(), 1);
                assert!(q.is_empty());
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn identity_is_none() {
        let m = StratumMatrix::Real(RMatrix::identity(2, 2));
        assert!(classify(&m, &tol()).unwrap().is_none());
    }

    #[test]
    fn complexify_roundtrip_center_c() {
        // diag(2i, -i) has distinct imaginary eigenvalues.
        let mc = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 2.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
            ],
        );
        let label = classify(&StratumMatrix::Complex(mc), &tol()).unwrap().unwrap();
        match label {
            StratumLabel::CenterC { xi } => {
                assert!(xi.all_singleton());
                assert_eq!(xi.weight(), 2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn boundary_is_refused() {
        // All eigenvalues near the imaginary axis, but one real part sits at
        // three clustering radii: refused rather than guessed.
        let eps = 3e-6;
        let m = StratumMatrix::Real(RMatrix::from_row_slice(
            3,
            3,
            &[eps, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0],
        ));
        assert!(matches!(
            classify(&m, &tol()),
            Err(Error::AmbiguousCluster(_))
        ));

        // All eigenvalue moduli at a few radii from zero: nilpotent boundary.
        let m = StratumMatrix::Real(RMatrix::from_row_slice(
            2,
            2,
            &[eps, 0.0, 0.0, 0.0],
        ));
        assert!(matches!(
            classify(&m, &tol()),
            Err(Error::AmbiguousCluster(_))
        ));
    }
}
