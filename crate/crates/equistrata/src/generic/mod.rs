//! Monte Carlo transversality experiments: seeded polynomial families into a
//! reduced algebra, continuous distance proxies for spectral conditions,
//! grid-and-refine hit detection, and persistence certificates for witness
//! families through a stratum.

mod distance;
mod family;
mod mc;
mod witness;

pub use distance::{matrix_distance, stratum_distance, DistanceProxy};
pub use family::{monomials, random_family, AlgebraSpec, ParametricFamily};
pub use mc::{monte_carlo, HitEvent, HitReport, McConfig, McReport};
pub use witness::{certify_witness, witness_family, PerturbationOutcome, WitnessCertificate, WitnessFamily};
