//! Exact arithmetic substrate: coefficient fields, sparse multivariate and
//! dense univariate polynomials, resultants and discriminants, Smith normal
//! form, and certified rational root extraction.

pub mod coeff;
pub mod multipoly;
pub mod primes;
pub mod resultant;
pub mod roots;
pub mod snf;
pub mod upoly;

pub use coeff::{Field, Fp};
pub use multipoly::{Exp, Poly, MAX_ARITY};
pub use resultant::{discriminant, poly_det, resultant};
pub use roots::{rational_root_and_linear_factors, LinearFactors};
pub use snf::{smith_normal_form, SnfResult};
pub use upoly::UPoly;
