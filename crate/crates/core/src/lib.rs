//! Special primes of Frobenius-linear maps on free modules over polynomial rings in characteristic p.

pub mod decomposition;
pub mod error;
pub mod factor;
mod linalg;
pub mod field;
pub mod frobenius;
mod gb;
pub mod matrix;
pub mod near_splitting;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod special;
pub mod submodule;
mod upoly;

pub use error::{AlgebraError, Result};
pub use field::PrimeField;
pub use matrix::PolyMatrix;
pub use poly::Polynomial;
pub use ring::{Ring, RingRef};
pub use special::{find_special_primes, SpecialPrimeReport};
pub use submodule::{Ideal, Submodule};
