pub mod field;
pub(crate) mod intpoly;
pub mod json;
pub mod poly;
pub mod random;
pub mod ratfunc;

pub use field::Field;
pub use poly::Poly;
pub use ratfunc::RatFunc;
