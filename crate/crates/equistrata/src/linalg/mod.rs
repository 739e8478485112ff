//! Dense matrix kernels: numerical rank, Sylvester operators, clustered
//! spectra, trace-power spectral equality, Jordan structure recovery and the
//! quaternionic structure predicates.

mod jordan;
mod quat;
mod rank;
pub(crate) mod spectrum;
mod sylvester;
mod traces;

pub use jordan::jordan_structure;
pub use quat::{
    embed_c, embed_h, is_quat_structured, itilde, jtilde, ktilde, quat_jordan_pairing_check,
    QuatStructured,
};
pub use rank::{
    nullspace_c, nullspace_r, nullspace_r_with_floor, numerical_rank_c,
    numerical_rank_c_with_floor, numerical_rank_r, singular_values_c,
};
pub use spectrum::{eigenvalues_c, eigenvalues_r, spectrum_c, spectrum_r, SpectrumMultiset};
pub use sylvester::{sylvester_operator_c, sylvester_operator_r};
pub use traces::{power_trace_equal_c, power_trace_equal_r, power_traces_c};
