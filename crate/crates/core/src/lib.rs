//! Exact construction and certification of proper holomorphic immersions and
//! embeddings of finitely punctured planar domains into `ℂ × ℂ*`.
//!
//! The library is organized in layers:
//!
//! * [`algebra`]: exact arithmetic over Gaussian rationals `ℚ(i)`, univariate
//!   and bivariate polynomials, rational functions, factored forms, and
//!   polynomials whose coefficients are exact `ℚ(i)`-combinations of powers
//!   of π.
//! * [`numeric`]: arbitrary-precision dyadic floats, complex ball arithmetic,
//!   and certified polynomial root finding (simultaneous iteration plus
//!   interval Newton contraction).
//! * [`domains`]: punctured planes, punctured circular domains, winding
//!   classes, and the circular-domain to punctured-plane reduction.
//! * [`maps`]: the map pairs `(f, g) : X → ℂ × ℂ*` the constructors build.
//! * [`verifiers`]: exact certificates for immersion, properness, winding,
//!   injectivity by syntactic form, and the nonexistence guards on `ℂ*`.
//! * [`doublepoints`]: finiteness decisions and enumeration of identified
//!   pairs `x ≠ y` with `ψ(x) = ψ(y)`.
//! * [`projection`]: boundary-direction certificates, their remediation by an
//!   extra far-away puncture, boundary clearance, and the reshaping map.
//! * [`constructors`]: the explicit immersion and embedding formulas together
//!   with the seeded perturbation search.
//!
//! Everything that decides a mathematical dichotomy (orders, windings,
//! gcds, resultants, direction classes) is computed exactly; floating point
//! appears only in certified root enclosures and reported residuals.

pub mod algebra;
pub mod constructors;
pub mod domains;
pub mod doublepoints;
pub mod error;
pub mod maps;
pub mod numeric;
pub mod projection;
pub mod util;
pub mod verifiers;

pub use error::{Error, Result};
