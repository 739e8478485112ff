//! Codimension bookkeeping: the parameter counts `K_U` and `C_U` attached to
//! a subrepresentation, the generic bifurcation catalog for k-parameter
//! families, and product-stratum codimension sums.

use serde::{Deserialize, Serialize};

use crate::algebra::DecompositionDescriptor;
use crate::error::{Error, Result};
use crate::strata::{stratum_codim, StratumLabel};
use crate::tol::ToleranceConfig;

/// A componentwise-dominated subdescriptor: multiplicities `r' <= r`,
/// `c' <= c`, `h' <= h` against an ambient descriptor. Entries are aligned
/// with the ambient descriptor's lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubDescriptor {
    pub real: Vec<usize>,
    pub complex: Vec<usize>,
    pub quaternionic: Vec<usize>,
}

impl SubDescriptor {
    pub fn against(ambient: &DecompositionDescriptor, real: Vec<usize>, complex: Vec<usize>, quaternionic: Vec<usize>) -> Result<Self> {
        let check = |sub: &[usize], amb: &[crate::algebra::IsotypicEntry], kind: &str| -> Result<()> {
            if sub.len() != amb.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{kind} multiplicity list length {} != ambient {}",
                    sub.len(),
                    amb.len()
                )));
            }
            for (s, a) in sub.iter().zip(amb) {
                if *s > a.mult {
                    return Err(Error::InvalidParameter(format!(
                        "{kind} sub-multiplicity {s} exceeds ambient {}",
                        a.mult
                    )));
                }
            }
            Ok(())
        };
        check(&real, &ambient.real, "real")?;
        check(&complex, &ambient.complex, "complex")?;
        check(&quaternionic, &ambient.quaternionic, "quaternionic")?;
        Ok(Self {
            real,
            complex,
            quaternionic,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.real.iter().all(|&r| r == 0)
            && self.complex.iter().all(|&c| c == 0)
            && self.quaternionic.iter().all(|&h| h == 0)
    }
}

/// Minimal parameter count for the subrepresentation to appear as a generic
/// generalized kernel: `sum r'_i + 2 sum c'_i + 4 sum h'_i`.
pub fn k_u(d: &SubDescriptor) -> usize {
    d.real.iter().sum::<usize>()
        + 2 * d.complex.iter().sum::<usize>()
        + 4 * d.quaternionic.iter().sum::<usize>()
}

/// Minimal parameter count for the subrepresentation to appear as a generic
/// center subspace: `sum ceil(r'_i / 2) + sum c'_i + sum h'_i`.
pub fn c_u(d: &SubDescriptor) -> usize {
    d.real.iter().map(|r| r.div_ceil(2)).sum::<usize>()
        + d.complex.iter().sum::<usize>()
        + d.quaternionic.iter().sum::<usize>()
}

/// `K_W` of a full descriptor.
pub fn k_w(w: &DecompositionDescriptor) -> usize {
    k_u(&full_sub(w))
}

/// `C_W` of a full descriptor.
pub fn c_w(w: &DecompositionDescriptor) -> usize {
    c_u(&full_sub(w))
}

fn full_sub(w: &DecompositionDescriptor) -> SubDescriptor {
    SubDescriptor {
        real: w.real.iter().map(|e| e.mult).collect(),
        complex: w.complex.iter().map(|e| e.mult).collect(),
        quaternionic: w.quaternionic.iter().map(|e| e.mult).collect(),
    }
}

/// One catalog row: a dominated subdescriptor with its parameter counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub sub: SubDescriptor,
    pub k: usize,
    pub c: usize,
}

/// The generic k-parameter bifurcation catalog of a representation: all
/// dominated subdescriptors with `K_U <= k` (steady-state candidates) and
/// all with `C_U <= k` (Hopf candidates). The trivial subrepresentation is
/// included in both lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub k: usize,
    pub steady: Vec<CatalogEntry>,
    pub hopf: Vec<CatalogEntry>,
}

/// Enumerates the dominance lattice. `cutoff` bounds the number of lattice
/// points visited; descriptors with huge multiplicities would otherwise blow
/// up the product.
pub fn catalog(w: &DecompositionDescriptor, k: usize, cutoff: Option<usize>) -> Result<Catalog> {
    let limits: Vec<usize> = w
        .real
        .iter()
        .chain(w.complex.iter())
        .chain(w.quaternionic.iter())
        .map(|e| e.mult)
        .collect();
    let lattice: usize = limits.iter().map(|m| m + 1).product();
    let max = cutoff.unwrap_or(1 << 20);
    if lattice > max {
        return Err(Error::InvalidParameter(format!(
            "dominance lattice has {lattice} points, exceeding the cutoff {max}"
        )));
    }
    let (nr, nc) = (w.real.len(), w.complex.len());
    let mut steady = Vec::new();
    let mut hopf = Vec::new();
    let mut counters = vec![0usize; limits.len()];
    loop {
        let sub = SubDescriptor {
            real: counters[..nr].to_vec(),
            complex: counters[nr..nr + nc].to_vec(),
            quaternionic: counters[nr + nc..].to_vec(),
        };
        let entry = CatalogEntry {
            k: k_u(&sub),
            c: c_u(&sub),
            sub,
        };
        if entry.k <= k {
            steady.push(entry.clone());
        }
        if entry.c <= k {
            hopf.push(entry);
        }
        let mut pos = limits.len();
        for i in (0..limits.len()).rev() {
            counters[i] += 1;
            if counters[i] <= limits[i] {
                pos = i;
                break;
            }
            counters[i] = 0;
        }
        if pos == limits.len() {
            break;
        }
    }
    let sort_key = |e: &CatalogEntry| (e.k, e.c, e.sub.real.clone(), e.sub.complex.clone(), e.sub.quaternionic.clone());
    steady.sort_by_key(sort_key);
    hopf.sort_by_key(sort_key);
    Ok(Catalog { k, steady, hopf })
}

/// Sum of measured codimensions of the given strata (product-stratum
/// codimension in the direct-sum algebra).
pub fn product_codim(labels: &[StratumLabel], seed: u64, tol: &ToleranceConfig) -> Result<usize> {
    let mut total = 0;
    for label in labels {
        total += stratum_codim(label, seed, tol)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IsotypicEntry;

    fn descriptor(r: &[usize], c: &[usize], h: &[usize]) -> DecompositionDescriptor {
        DecompositionDescriptor {
            real: r.iter().map(|&m| IsotypicEntry { mult: m, dim: 1 }).collect(),
            complex: c.iter().map(|&m| IsotypicEntry { mult: m, dim: 2 }).collect(),
            quaternionic: h.iter().map(|&m| IsotypicEntry { mult: m, dim: 4 }).collect(),
        }
    }

    #[test]
    fn k_formula() {
        let w = descriptor(&[1], &[], &[]);
        assert_eq!(k_w(&w), 1);
        let w = descriptor(&[1, 2], &[1], &[1]);
        assert_eq!(k_w(&w), 1 + 2 + 2 + 4);
        assert_eq!(k_w(&descriptor(&[], &[], &[])), 0);
    }

    #[test]
    fn c_formula() {
        assert_eq!(c_w(&descriptor(&[2], &[], &[])), 1);
        assert_eq!(c_w(&descriptor(&[], &[1], &[])), 1);
        assert_eq!(c_w(&descriptor(&[], &[], &[1])), 1);
        assert_eq!(c_w(&descriptor(&[3], &[], &[])), 2);
    }

    #[test]
    fn catalog_k1() {
        // W: r=[2], c=[1]; k=1 -> steady: trivial + r'=[1];
        // hopf: trivial, r'=[2] (C=1), c'=[1] (C=1), r'=[1] (C=1).
        let w = descriptor(&[2], &[1], &[]);
        let cat = catalog(&w, 1, None).unwrap();
        let nontrivial_steady: Vec<_> = cat.steady.iter().filter(|e| !e.sub.is_trivial()).collect();
        assert_eq!(nontrivial_steady.len(), 1);
        assert_eq!(nontrivial_steady[0].sub.real, vec![1]);
        assert_eq!(nontrivial_steady[0].k, 1);
        assert!(cat
            .hopf
            .iter()
            .any(|e| e.sub.real == vec![2] && e.sub.complex == vec![0] && e.c == 1));
        assert!(cat
            .hopf
            .iter()
            .any(|e| e.sub.real == vec![0] && e.sub.complex == vec![1] && e.c == 1));
    }

    #[test]
    fn catalog_k0_is_trivial_only() {
        let w = descriptor(&[2], &[1], &[]);
        let cat = catalog(&w, 0, None).unwrap();
        assert_eq!(cat.steady.len(), 1);
        assert!(cat.steady[0].sub.is_trivial());
        assert_eq!(cat.hopf.len(), 1);
        assert!(cat.hopf[0].sub.is_trivial());
    }

    #[test]
    fn quaternionic_k_exceeds_3() {
        let w = descriptor(&[], &[], &[1]);
        let cat = catalog(&w, 3, None).unwrap();
        let nontrivial_steady: Vec<_> = cat.steady.iter().filter(|e| !e.sub.is_trivial()).collect();
        assert!(nontrivial_steady.is_empty());
        assert!(cat.hopf.iter().any(|e| e.sub.quaternionic == vec![1] && e.c == 1));
    }

    #[test]
    fn monotone_under_dominance() {
        let w = descriptor(&[3], &[2], &[1]);
        let a = SubDescriptor::against(&w, vec![1], vec![1], vec![0]).unwrap();
        let b = SubDescriptor::against(&w, vec![2], vec![2], vec![1]).unwrap();
        assert!(k_u(&a) <= k_u(&b));
        assert!(c_u(&a) <= c_u(&b));
        assert!(c_u(&a) <= k_u(&a));
        assert!(c_u(&b) <= k_u(&b));
    }

    #[test]
    fn rejects_dominance_violation() {
        let w = descriptor(&[1], &[], &[]);
        assert!(SubDescriptor::against(&w, vec![2], vec![], vec![]).is_err());
    }
}
