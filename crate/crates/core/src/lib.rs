//! Exact computation of graded invariants of reduced plane curves and
//! curve arrangements in `P^2`: Jacobian syzygies, Milnor and Tjurina
//! algebras, Castelnuovo–Mumford regularity, local singularity invariants,
//! and checks of the regularity bounds for arrangements.

pub mod arrangement;
pub mod corpus;
pub mod curve;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod singularities;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, QPoly};
