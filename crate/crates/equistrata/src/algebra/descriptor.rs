use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    block_type, end_algebra, lift_idempotent, radical, semisimple_blocks, DivisionType,
    EndAlgebraBasis, MonoidRepresentation, QuotientAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::power_trace_equal_r;
use crate::mat::RMatrix;
use crate::tol::ToleranceConfig;

const DESCRIPTOR_SEED: u64 = 0xE057_2A7A;

/// Multiplicity and real dimension of one isotypic family of indecomposable
/// summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsotypicEntry {
    pub mult: usize,
    pub dim: usize,
}

/// The decomposition bookkeeping of a representation: multiplicities and
/// dimensions of its non-isomorphic indecomposable summands, grouped by the
/// division type of their endomorphism rings.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DecompositionDescriptor {
    pub real: Vec<IsotypicEntry>,
    pub complex: Vec<IsotypicEntry>,
    pub quaternionic: Vec<IsotypicEntry>,
}

impl DecompositionDescriptor {
    /// Total dimension of the underlying representation.
    pub fn total_dim(&self) -> usize {
        self.entries().map(|e| e.mult * e.dim).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = &IsotypicEntry> {
        self.real
            .iter()
            .chain(self.complex.iter())
            .chain(self.quaternionic.iter())
    }

    pub fn is_empty(&self) -> bool {
        self.real.is_empty() && self.complex.is_empty() && self.quaternionic.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("descriptor serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }

    fn canonicalize(&mut self) {
        let key = |e: &IsotypicEntry| (e.dim, e.mult);
        self.real.sort_by_key(key);
        self.complex.sort_by_key(key);
        self.quaternionic.sort_by_key(key);
    }
}

/// Runs the full pipeline commutant -> radical -> simple blocks -> division
/// types and assembles the decomposition descriptor. Random-element
/// splitting uses a fixed internal seed; see
/// [`decomposition_descriptor_seeded`] to override it.
pub fn decomposition_descriptor(
    rep: &MonoidRepresentation,
    tol: &ToleranceConfig,
) -> Result<DecompositionDescriptor> {
    decomposition_descriptor_seeded(rep, tol, DESCRIPTOR_SEED)
}

pub fn decomposition_descriptor_seeded(
    rep: &MonoidRepresentation,
    tol: &ToleranceConfig,
    seed: u64,
) -> Result<DecompositionDescriptor> {
    let mut end = end_algebra(rep, tol)?;
    end.radical = radical(&end, tol)?;
    let quot = QuotientAlgebra::new(&end, &end.radical, tol)?;
    let blocks = semisimple_blocks(&quot, seed, tol)?;

    let mut descriptor = DecompositionDescriptor::default();
    let mut isotypic_total = 0usize;
    let mut semisimple_dim = 0usize;
    for block in &blocks {
        let bt = block_type(&quot, block, seed, tol)?;
        let division_dim = match bt.division {
            DivisionType::R => 1,
            DivisionType::C => 2,
            DivisionType::H => 4,
        };
        semisimple_dim += bt.multiplicity * bt.multiplicity * division_dim;

        let e_matrix = quot.matrix_of(&block.idempotent);
        let lifted = lift_idempotent(&e_matrix, tol)?;
        let trace = lifted.trace();
        let isotypic_dim = trace.round() as usize;
        if (trace - isotypic_dim as f64).abs() > 1e-6 * (rep.dim as f64).max(1.0) {
            return Err(Error::ToleranceFailure(format!(
                "isotypic idempotent trace {trace} is not an integer"
            )));
        }
        if isotypic_dim % bt.multiplicity != 0 {
            return Err(Error::ToleranceFailure(format!(
                "isotypic dimension {isotypic_dim} not divisible by multiplicity {}",
                bt.multiplicity
            )));
        }
        isotypic_total += isotypic_dim;
        let entry = IsotypicEntry {
            mult: bt.multiplicity,
            dim: isotypic_dim / bt.multiplicity,
        };
        match bt.division {
            DivisionType::R => descriptor.real.push(entry),
            DivisionType::C => descriptor.complex.push(entry),
            DivisionType::H => descriptor.quaternionic.push(entry),
        }
    }
    if isotypic_total != rep.dim {
        return Err(Error::ToleranceFailure(format!(
            "isotypic dimensions sum to {isotypic_total}, expected {}",
            rep.dim
        )));
    }
    if semisimple_dim + end.dim_radical() != end.dim_end() {
        return Err(Error::ToleranceFailure(format!(
            "dim bookkeeping: blocks {semisimple_dim} + radical {} != end {}",
            end.dim_radical(),
            end.dim_end()
        )));
    }
    descriptor.canonicalize();
    Ok(descriptor)
}

/// Certifies the two computable consequences of the quotient morphism onto
/// the reduced algebra, without constructing explicit Wedderburn coordinates:
/// the spectrum of `a` is unchanged by adding radical elements, and classes
/// modulo the radical multiply consistently.
///
/// `a` and `b` must lie in the span of the commutant basis.
pub fn psi_image_check(
    end: &EndAlgebraBasis,
    a: &RMatrix,
    b: &RMatrix,
    tol: &ToleranceConfig,
    seed: u64,
) -> Result<bool> {
    for (name, m) in [("a", a), ("b", b)] {
        let (_, res) = end.project(m);
        if res > tol.residual_tol * m.norm().max(1.0) {
            return Err(Error::DimensionMismatch(format!(
                "{name} is not in the commutant span (residual {res:e})"
            )));
        }
    }
    // (i) spectral invariance under the radical.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut radical_samples: Vec<RMatrix> = end.radical.clone();
    for _ in 0..3 {
        if end.radical.is_empty() {
            break;
        }
        let combo = end
            .radical
            .iter()
            .fold(RMatrix::zeros(end.n, end.n), |acc, r| {
                let g: f64 = rng.sample(StandardNormal);
                acc + r * g
            });
        radical_samples.push(combo);
    }
    for x in &radical_samples {
        let shifted = a + x * a.norm().max(1.0);
        if !power_trace_equal_r(a, &shifted, tol)? {
            return Ok(false);
        }
    }
    // (ii) multiplicativity modulo the radical.
    let quot = QuotientAlgebra::new(end, &end.radical, tol)?;
    let pa = quot.project(a);
    let pb = quot.project(b);
    let lhs = quot.project(&(a * b));
    let rhs = quot.mul(&pa, &pb);
    let scale = (a.norm() * b.norm()).max(1.0);
    Ok((lhs - rhs).norm() <= tol.residual_tol * scale * 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_rep() -> MonoidRepresentation {
        let g = RMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        MonoidRepresentation::new(3, vec![g]).unwrap()
    }

    #[test]
    fn z3_descriptor() {
        let tol = ToleranceConfig::default();
        let d = decomposition_descriptor(&z3_rep(), &tol).unwrap();
        assert_eq!(d.real, vec![IsotypicEntry { mult: 1, dim: 1 }]);
        assert_eq!(d.complex, vec![IsotypicEntry { mult: 1, dim: 2 }]);
        assert!(d.quaternionic.is_empty());
        assert_eq!(d.total_dim(), 3);
    }

    #[test]
    fn trivial_monoid_descriptor() {
        let tol = ToleranceConfig::default();
        let rep = MonoidRepresentation::new(2, vec![]).unwrap();
        let d = decomposition_descriptor(&rep, &tol).unwrap();
        assert_eq!(d.real, vec![IsotypicEntry { mult: 2, dim: 1 }]);
        assert!(d.complex.is_empty() && d.quaternionic.is_empty());
    }

    #[test]
    fn nilpotent_monoid_descriptor() {
        let tol = ToleranceConfig::default();
        let g = RMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let rep = MonoidRepresentation::new(2, vec![g]).unwrap();
        let d = decomposition_descriptor(&rep, &tol).unwrap();
        assert_eq!(d.real, vec![IsotypicEntry { mult: 1, dim: 2 }]);
    }

    #[test]
    fn psi_check_on_z3() {
        let tol = ToleranceConfig::default();
        let mut end = end_algebra(&z3_rep(), &tol).unwrap();
        end.radical = radical(&end, &tol).unwrap();
        let a = &end.basis[0] * 0.7 + &end.basis[1] * 1.3;
        let b = &end.basis[2] * 0.2 - &end.basis[0] * 0.4;
        assert!(psi_image_check(&end, &a, &b, &tol, 3).unwrap());
    }

    #[test]
    fn psi_check_rejects_non_member() {
        let tol = ToleranceConfig::default();
        let mut end = end_algebra(&z3_rep(), &tol).unwrap();
        end.radical = radical(&end, &tol).unwrap();
        let outside = RMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(psi_image_check(&end, &outside, &outside, &tol, 3).is_err());
    }
}
