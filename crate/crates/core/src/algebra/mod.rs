//! Exact arithmetic: Gaussian rationals, polynomials, rational functions,
//! factored forms, bivariate polynomials, and π-polynomial coefficients.
//!
//! Every operation in this module is exact over arbitrary-precision
//! integers; there is no floating point here.

mod bivar;
mod factored;
mod gaussian;
mod pi;
mod poly;
mod ratfunc;

pub use bivar::{bivariate_gcd, cross_difference, resultant_in_y, BivariatePolynomial};
pub use factored::FactoredRational;
pub use gaussian::GaussianRational;
pub use pi::{shift_of_poly, PiPoly, PiScalar};
pub use poly::{poly_gcd, Polynomial};
pub use ratfunc::RationalFunction;
