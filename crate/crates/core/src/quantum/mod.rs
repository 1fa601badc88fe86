//! Small quantum products, the shape of J-functions and mirror maps.

pub mod nov;
pub mod shape;
pub mod table;

pub use nov::{NovRat, QMat, QVec, Trunc};
pub use shape::{is_toric_fano, j_shape_check, MirrorMapReport, ShapeMode};
pub use table::{
    basis_words, deg, divisor_directions, pde_overdetermination_check, quantum_constants, quantum_table, shape_mode,
    required_t_order, DModule, QuantumProductTable, Word,
};
