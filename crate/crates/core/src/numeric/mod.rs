//! Certified numerics: exact dyadic arithmetic, complex disc (ball)
//! arithmetic with rigorous radius propagation, a high-precision π, and
//! certified root finding by simultaneous iteration plus interval-Newton
//! contraction.

mod ball;
mod dyadic;
mod roots;

pub use ball::{eval_poly_ball, pi_ball, pi_scalar_to_ball, CBall};
pub use dyadic::Dyadic;
pub use roots::{
    filter_points, find_roots, find_simple_roots_with, CertifiedRoot,
};
