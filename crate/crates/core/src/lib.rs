//! Exact computations in generalized quantum groups U(χ,Π).

pub mod algebra;
pub mod groupoid;
pub mod hc;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod presets;
pub mod rank1;
pub mod scalars;
pub mod verma;
