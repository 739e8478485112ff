use crate::strata::label::{Field, StratumKind, StratumLabel};
use crate::strata::partition::{partitions, xi_labels, Partition};

/// Complete, duplicate-free list of canonical stratum labels for the given
/// algebra and spectral kind, in a deterministic order.
///
/// Nilpotent strata are labelled by partitions of `n` in every field. Center
/// strata are labelled by `Xi_n` over `C`, and by `(xi in Xi_m, q)` over `R`
/// (`1 <= m <= n/2`, `q` a partition of `n - 2m`) and over `H`
/// (`1 <= m <= n`, `q` a partition of `n - m`).
///
/// Over `R` with `n = 1` the only matrix with purely imaginary spectrum is
/// zero, so the center stratification degenerates to the single nilpotent
/// stratum and that label is returned.
pub fn enumerate_strata(field: Field, n: usize, kind: StratumKind) -> Vec<StratumLabel> {
    assert!(n >= 1, "strata are defined for n >= 1");
    let mut out = match (field, kind) {
        (f, StratumKind::Nilpotent) => partitions(n)
            .into_iter()
            .map(|p| StratumLabel::Nilpotent {
                field: f,
                partition: p,
            })
            .collect(),
        (Field::C, StratumKind::Center) => xi_labels(n)
            .into_iter()
            .map(|xi| StratumLabel::CenterC { xi })
            .collect(),
        (Field::R, StratumKind::Center) => {
            if n == 1 {
                vec![StratumLabel::Nilpotent {
                    field: Field::R,
                    partition: Partition::new(vec![1]).expect("valid"),
                }]
            } else {
                let mut labels = Vec::new();
                for m in 1..=(n / 2) {
                    for xi in xi_labels(m) {
                        for q in partitions(n - 2 * m) {
                            labels.push(StratumLabel::CenterR { xi: xi.clone(), q });
                        }
                    }
                }
                labels
            }
        }
        (Field::H, StratumKind::Center) => {
            let mut labels = Vec::new();
            for m in 1..=n {
                for xi in xi_labels(m) {
                    for q in partitions(n - m) {
                        labels.push(StratumLabel::CenterH { xi: xi.clone(), q });
                    }
                }
            }
            labels
        }
    };
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_counts_are_partition_counts() {
        assert_eq!(enumerate_strata(Field::C, 2, StratumKind::Nilpotent).len(), 2);
        assert_eq!(enumerate_strata(Field::R, 5, StratumKind::Nilpotent).len(), 7);
        assert_eq!(enumerate_strata(Field::H, 4, StratumKind::Nilpotent).len(), 5);
    }

    #[test]
    fn center_c2_count() {
        // Xi_2 = {((2);(2)), ((2);(1,1)), ((1,1);(1),(1))}
        assert_eq!(enumerate_strata(Field::C, 2, StratumKind::Center).len(), 3);
    }

    #[test]
    fn center_r2_is_unique() {
        let labels = enumerate_strata(Field::R, 2, StratumKind::Center);
        assert_eq!(labels.len(), 1);
        match &labels[0] {
            StratumLabel::CenterR { xi, q } => {
                assert_eq!(xi.weight(), 1);
                assert!(q.is_empty());
            }
            other => panic!("unexpected label {other}"),
        }
    }

    #[test]
    fn center_r1_degenerates_to_nilpotent() {
        let labels = enumerate_strata(Field::R, 1, StratumKind::Center);
        assert_eq!(labels.len(), 1);
        assert!(matches!(labels[0], StratumLabel::Nilpotent { .. }));
    }

    #[test]
    fn center_h1_single() {
        assert_eq!(enumerate_strata(Field::H, 1, StratumKind::Center).len(), 1);
    }

    #[test]
    fn labels_are_sorted_and_unique() {
        let labels = enumerate_strata(Field::H, 4, StratumKind::Center);
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(labels, sorted);
    }
}
