//! Canonical stratum representatives in the three reduced matrix algebras,
//! stratum enumeration, numerical tangent-rank dimensions and classification
//! of matrices into strata.

mod build;
mod classify;
mod dimension;
mod enumerate;
mod label;
mod partition;

pub use build::{
    block_diag_partition, build_b_xi, build_d_matrix, build_h_half, build_i_p,
    build_quat_center_rep, build_real_center_rep, jordan_block, quat_center_direction,
    real_center_direction, sample, sample_parameters, z_nm, z_nm_inv, StratumMatrix,
    StratumSample,
};
pub(crate) use build::{
    model_derivatives as build_model_derivatives, model_matrix_unchecked as build_model_matrix,
};
pub use classify::{classify, classify_complex_in_field};
pub use dimension::{
    algebra_basis, algebra_coords, ambient_real_dim, closed_form_dimension, coords_to_matrix,
    is_top_label, stratum_codim, stratum_dimension, tangent_span, DimensionReport,
};
pub use enumerate::enumerate_strata;
pub use label::{Field, StratumKind, StratumLabel};
pub use partition::{commutant_dim, partitions, xi_labels, Partition, XiLabel};
