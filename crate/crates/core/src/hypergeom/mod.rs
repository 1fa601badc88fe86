//! Hypergeometric series: Gamma-ratio products, base J-functions, the
//! restrictions `J^alpha` and the non-equivariant I-functions.

pub mod classical;
pub mod equivariant;
pub mod gamma;

pub use classical::{classical_i, ClassicalRing};
pub use equivariant::{
    base_j, build_equivariant, divisor_shift, dressed_base_j, restrict_i, string_dress, t_vars, EquivariantI,
};
pub use gamma::{gamma_ratio_inverse, gamma_ratio_product};
