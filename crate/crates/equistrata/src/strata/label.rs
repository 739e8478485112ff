use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strata::partition::{Partition, XiLabel};

/// The scalar type of a reduced matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::R => write!(f, "R"),
            Field::C => write!(f, "C"),
            Field::H => write!(f, "H"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Field::R),
            "C" | "c" => Ok(Field::C),
            "H" | "h" => Ok(Field::H),
            other => Err(Error::InvalidParameter(format!("unknown field {other}"))),
        }
    }
}

/// Which spectral configuration a stratum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StratumKind {
    Nilpotent,
    Center,
}

impl std::str::FromStr for StratumKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nilpotent" => Ok(StratumKind::Nilpotent),
            "center" => Ok(StratumKind::Center),
            other => Err(Error::InvalidParameter(format!("unknown kind {other}"))),
        }
    }
}

/// Canonical label of a conjugacy-invariant stratum in one of the reduced
/// algebras.
///
/// - `Nilpotent`: the orbit of the Jordan matrix with block partition `p`
///   (for `H`, of its doubled complex picture).
/// - `CenterC`: the orbit family of block matrices with distinct purely
///   imaginary eigenvalues, one Jordan layout per block.
/// - `CenterR` / `CenterH`: pairs of conjugate imaginary clusters labelled by
///   `xi` over `m`, plus a nilpotent remainder with partition `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumLabel {
    Nilpotent { field: Field, partition: Partition },
    CenterC { xi: XiLabel },
    CenterR { xi: XiLabel, q: Partition },
    CenterH { xi: XiLabel, q: Partition },
}

impl StratumLabel {
    pub fn field(&self) -> Field {
        match self {
            StratumLabel::Nilpotent { field, .. } => *field,
            StratumLabel::CenterC { .. } => Field::C,
            StratumLabel::CenterR { .. } => Field::R,
            StratumLabel::CenterH { .. } => Field::H,
        }
    }

    pub fn kind(&self) -> StratumKind {
        match self {
            StratumLabel::Nilpotent { .. } => StratumKind::Nilpotent,
            _ => StratumKind::Center,
        }
    }

    /// The algebra size `n` of the label (e.g. matrices are n-by-n over R or
    /// C, 2n-by-2n in the complex picture over H).
    pub fn ambient_n(&self) -> usize {
        match self {
            StratumLabel::Nilpotent { partition, .. } => partition.weight(),
            StratumLabel::CenterC { xi } => xi.weight(),
            StratumLabel::CenterR { xi, q } => 2 * xi.weight() + q.weight(),
            StratumLabel::CenterH { xi, q } => xi.weight() + q.weight(),
        }
    }

    /// Number of imaginary-pair clusters (`m` in the center cases).
    pub fn m(&self) -> usize {
        match self {
            StratumLabel::Nilpotent { .. } => 0,
            StratumLabel::CenterC { xi } => xi.weight(),
            StratumLabel::CenterR { xi, .. } | StratumLabel::CenterH { xi, .. } => xi.weight(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StratumLabel::Nilpotent { partition, .. } => {
                if partition.is_empty() {
                    return Err(Error::InvalidLabel("empty nilpotent partition".into()));
                }
            }
            StratumLabel::CenterC { xi } => {
                if xi.weight() == 0 {
                    return Err(Error::InvalidLabel("empty center label".into()));
                }
            }
            StratumLabel::CenterR { xi, .. } | StratumLabel::CenterH { xi, .. } => {
                if xi.weight() == 0 {
                    return Err(Error::InvalidLabel(
                        "center label needs at least one imaginary pair".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            StratumLabel::Nilpotent { field, partition } => json!({
                "field": field.to_string(),
                "kind": "nilpotent",
                "partition": partition.parts(),
            }),
            StratumLabel::CenterC { xi } => json!({
                "field": "C",
                "kind": "center",
                "xi": xi_json(xi),
            }),
            StratumLabel::CenterR { xi, q } => json!({
                "field": "R",
                "kind": "center",
                "m": xi.weight(),
                "xi": xi_json(xi),
                "q": q.parts(),
            }),
            StratumLabel::CenterH { xi, q } => json!({
                "field": "H",
                "kind": "center",
                "m": xi.weight(),
                "xi": xi_json(xi),
                "q": q.parts(),
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field: Field = v
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::InvalidLabel("missing field".into()))?
            .parse()?;
        let kind = v
            .get("kind")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::InvalidLabel("missing kind".into()))?;
        let parse_partition = |v: &serde_json::Value| -> Result<Partition> {
            let parts: Vec<usize> = serde_json::from_value(v.clone())?;
            Partition::new(parts)
        };
        match kind {
            "nilpotent" => {
                let p = parse_partition(
                    v.get("partition")
                        .ok_or_else(|| Error::InvalidLabel("missing partition".into()))?,
                )?;
                Ok(StratumLabel::Nilpotent {
                    field,
                    partition: p,
                })
            }
            "center" => {
                let xi_v = v
                    .get("xi")
                    .ok_or_else(|| Error::InvalidLabel("missing xi".into()))?;
                let outer = parse_partition(
                    xi_v.get("outer")
                        .ok_or_else(|| Error::InvalidLabel("missing xi.outer".into()))?,
                )?;
                let inner_v = xi_v
                    .get("inner")
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| Error::InvalidLabel("missing xi.inner".into()))?;
                let inner = inner_v
                    .iter()
                    .map(parse_partition)
                    .collect::<Result<Vec<_>>>()?;
                let xi = XiLabel::new(outer, inner)?;
                match field {
                    Field::C => Ok(StratumLabel::CenterC { xi }),
                    Field::R | Field::H => {
                        let q = match v.get("q") {
                            Some(qv) => parse_partition(qv)?,
                            None => Partition::empty(),
                        };
                        if field == Field::R {
                            Ok(StratumLabel::CenterR { xi, q })
                        } else {
                            Ok(StratumLabel::CenterH { xi, q })
                        }
                    }
                }
            }
            other => Err(Error::InvalidLabel(format!("unknown kind {other}"))),
        }
    }
}

fn xi_json(xi: &XiLabel) -> serde_json::Value {
    serde_json::json!({
        "outer": xi.outer.parts(),
        "inner": xi.inner.iter().map(|p| p.parts()).collect::<Vec<_>>(),
    })
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratumLabel::Nilpotent { field, partition } => {
                write!(f, "{field}-nilpotent {partition}")
            }
            StratumLabel::CenterC { xi } => write!(f, "C-center {xi}"),
            StratumLabel::CenterR { xi, q } => write!(f, "R-center m={} {xi} q={q}", xi.weight()),
            StratumLabel::CenterH { xi, q } => write!(f, "H-center m={} {xi} q={q}", xi.weight()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let xi = XiLabel::new(
            Partition::new(vec![2, 1]).unwrap(),
            vec![
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1]).unwrap(),
            ],
        )
        .unwrap();
        let label = StratumLabel::CenterR {
            xi,
            q: Partition::new(vec![1]).unwrap(),
        };
        let v = label.to_json();
        let back = StratumLabel::from_json(&v).unwrap();
        assert_eq!(label, back);
        assert_eq!(label.ambient_n(), 7);
    }

    #[test]
    fn spec_example_shape() {
        let xi = XiLabel::new(
            Partition::new(vec![2, 1]).unwrap(),
            vec![
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1]).unwrap(),
            ],
        )
        .unwrap();
        let label = StratumLabel::CenterC { xi };
        let v = label.to_json();
        assert_eq!(v["field"], "C");
        assert_eq!(v["kind"], "center");
        assert_eq!(v["xi"]["outer"], serde_json::json!([2, 1]));
        assert_eq!(v["xi"]["inner"], serde_json::json!([[2], [1]]));
    }
}
