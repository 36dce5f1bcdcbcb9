//! Exact multivariate polynomial arithmetic and polynomial-matrix
//! determinants.

mod matrix;
mod mpoly;
mod parse;
mod root;

pub use matrix::{det_fraction_free, det_lu, det_numeric, PolyMatrix};
pub use mpoly::{MPoly, Monomial};
pub(crate) use mpoly::pairwise_sum;
pub use parse::parse_poly;
pub use root::nth_root_poly;
