//! The equivariant endomorphism algebra of a monoid representation: commutant
//! computation, the trace-form radical, splitting of the semisimple quotient
//! into simple blocks, division-type detection and the decomposition
//! descriptor (multiplicities and R/C/H types of indecomposable summands).

mod blocks;
mod descriptor;
mod end;
mod quotient;
mod radical;

pub use blocks::{block_type, lift_idempotent, semisimple_blocks, BlockType, SemisimpleBlock};
pub use descriptor::{
    decomposition_descriptor, decomposition_descriptor_seeded, psi_image_check,
    DecompositionDescriptor, IsotypicEntry,
};
pub use end::end_algebra;
pub use quotient::QuotientAlgebra;
pub use radical::radical;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::{MatrixJson, RMatrix};

/// Scalar type of the endomorphism ring of an indecomposable summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisionType {
    R,
    C,
    H,
}

/// A finite set of real generator matrices acting on `R^N`. The identity is
/// implied and equivariance is only ever imposed against the listed
/// generators; maps commuting with the generators automatically commute with
/// every product, so no monoid closure is computed.
#[derive(Debug, Clone)]
pub struct MonoidRepresentation {
    pub dim: usize,
    pub generators: Vec<RMatrix>,
}

impl MonoidRepresentation {
    pub fn new(dim: usize, generators: Vec<RMatrix>) -> Result<Self> {
        for g in &generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { dim, generators })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "generators": self.generators.iter().map(MatrixJson::from_real).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            dim: usize,
            generators: Vec<MatrixJson>,
        }
        let wire: Wire = serde_json::from_value(v.clone())?;
        let generators = wire
            .generators
            .iter()
            .map(|m| m.to_real())
            .collect::<Result<Vec<_>>>()?;
        Self::new(wire.dim, generators)
    }
}

/// Orthonormal basis of `End(W)` together with a basis of its radical.
#[derive(Debug, Clone)]
pub struct EndAlgebraBasis {
    /// Ambient dimension `N`.
    pub n: usize,
    /// Frobenius-orthonormal basis of the commutant.
    pub basis: Vec<RMatrix>,
    /// Orthonormal basis of the trace-form radical; a subset of `span(basis)`.
    pub radical: Vec<RMatrix>,
}

impl EndAlgebraBasis {
    pub fn dim_end(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_radical(&self) -> usize {
        self.radical.len()
    }

    /// Least-squares coordinates of `m` in the basis, with the residual of
    /// the fit.
    pub fn project(&self, m: &RMatrix) -> (Vec<f64>, f64) {
        let coords: Vec<f64> = self.basis.iter().map(|e| frob_inner(e, m)).collect();
        let mut recon = RMatrix::zeros(self.n, self.n);
        for (c, e) in coords.iter().zip(&self.basis) {
            recon += e * *c;
        }
        let res = (m - recon).norm();
        (coords, res)
    }
}

pub(crate) fn frob_inner(a: &RMatrix, b: &RMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}
