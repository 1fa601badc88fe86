//! Exact arithmetic: rationals, equivariant scalars, the truncated base
//! ring, factored rational functions in `z`, and Novikov series.

pub mod base_ring;
pub mod coh;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod zfun;

pub use base_ring::BaseElem;
pub use coh::{CohAlgebra, CohLaurent};
pub use poly::{rat, ratio, Poly, Rat};
pub use scalar::Scalar;
pub use series::{Coeff, DegreeIndex, NovikovSeries, TMonomial};
pub use zfun::ZFun;
