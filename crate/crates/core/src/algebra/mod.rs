//! Exact arithmetic over ℚ and ℚ(t), and dense linear algebra on top of it.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use field::{FieldElement, FieldTag};
pub use matrix::{Matrix, PivotOrder, RowReduction};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use rational::Rational;
