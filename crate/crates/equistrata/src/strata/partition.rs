use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers. The empty partition (of 0)
/// is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidParameter("partition parts must be >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() <= 1
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of `n` in descending lexicographic order; `partitions(0)`
/// is the singleton list containing the empty partition.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// An outer partition `(s_1, ..., s_k)` with an inner partition of each
/// `s_i` attached. Canonical form sorts the `(s_i, p_i)` pairs descending,
/// so labels that differ only by reordering equal-size blocks coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XiLabel {
    pub outer: Partition,
    pub inner: Vec<Partition>,
}

impl XiLabel {
    pub fn new(outer: Partition, inner: Vec<Partition>) -> Result<Self> {
        if outer.len() != inner.len() {
            return Err(Error::InvalidLabel(
                "inner partition count must match outer part count".into(),
            ));
        }
        for (s, p) in outer.parts().iter().zip(&inner) {
            if p.weight() != *s {
                return Err(Error::InvalidLabel(format!(
                    "inner partition {p} does not sum to outer part {s}"
                )));
            }
        }
        Ok(Self { outer, inner }.canonical())
    }

    fn canonical(self) -> Self {
        let mut pairs: Vec<(usize, Partition)> = self
            .outer
            .parts()
            .iter()
            .copied()
            .zip(self.inner)
            .collect();
        pairs.sort_by(|a, b| b.cmp(a));
        let outer = Partition(pairs.iter().map(|(s, _)| *s).collect());
        let inner = pairs.into_iter().map(|(_, p)| p).collect();
        Self { outer, inner }
    }

    /// Number of outer blocks (the parameter count of the stratum).
    pub fn block_count(&self) -> usize {
        self.outer.len()
    }

    /// Total size `n` the label lives in.
    pub fn weight(&self) -> usize {
        self.outer.weight()
    }

    /// True iff every inner partition is trivial, i.e. `p_i = (s_i)`.
    pub fn all_inner_trivial(&self) -> bool {
        self.inner.iter().all(|p| p.is_trivial())
    }

    /// True iff this is the label of the unique top center stratum:
    /// all blocks of size one.
    pub fn all_singleton(&self) -> bool {
        self.outer.parts().iter().all(|&s| s == 1)
    }
}

impl std::fmt::Display for XiLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}; {})",
            self.outer,
            self.inner
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All elements of `Xi_n` (outer partition plus inner partitions) in
/// canonical, deduplicated form. `xi_labels(0)` is empty.
pub fn xi_labels(n: usize) -> Vec<XiLabel> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for outer in partitions(n) {
        if outer.is_empty() {
            continue;
        }
        let choices: Vec<Vec<Partition>> =
            outer.parts().iter().map(|&s| partitions(s)).collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let inner: Vec<Partition> = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| c[i].clone())
                .collect();
            let label = XiLabel::new(outer.clone(), inner).expect("consistent by construction");
            if seen.insert(label.clone()) {
                out.push(label);
            }
            let mut carry = choices.len();
            for pos in (0..choices.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    carry = pos;
                    break;
                }
                idx[pos] = 0;
            }
            if carry == choices.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Dimension of the commutant of the nilpotent Jordan matrix with block
/// partition `p`: the sum of `min(s_i, s_j)` over all ordered pairs.
pub fn commutant_dim(p: &Partition) -> usize {
    let parts = p.parts();
    let mut total = 0;
    for &a in parts {
        for &b in parts {
            total += a.min(b);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0).len(), 1);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(2).len(), 2);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn xi_enumeration_small() {
        assert_eq!(xi_labels(1).len(), 1);
        // Xi_2: ((2);(2)), ((2);(1,1)), ((1,1);(1),(1))
        assert_eq!(xi_labels(2).len(), 3);
        // Xi_3: 3 + 2 + 1
        assert_eq!(xi_labels(3).len(), 6);
    }

    #[test]
    fn xi_dedup_collapses_equal_blocks() {
        // In Xi_4 with outer (2,2), the inner assignments ((2),(1,1)) and
        // ((1,1),(2)) describe the same set.
        let a = XiLabel::new(
            Partition::new(vec![2, 2]).unwrap(),
            vec![
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1, 1]).unwrap(),
            ],
        )
        .unwrap();
        let b = XiLabel::new(
            Partition::new(vec![2, 2]).unwrap(),
            vec![
                Partition::new(vec![1, 1]).unwrap(),
                Partition::new(vec![2]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn commutant_dims() {
        assert_eq!(commutant_dim(&Partition::new(vec![3]).unwrap()), 3);
        assert_eq!(commutant_dim(&Partition::new(vec![1, 1]).unwrap()), 4);
        assert_eq!(commutant_dim(&Partition::new(vec![2, 1]).unwrap()), 5);
        assert_eq!(commutant_dim(&Partition::empty()), 0);
    }
}
