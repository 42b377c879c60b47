//! Small-`ε` expansion of Nahm-type sums at `q = e^{−ε}` and the modularity
//! constraints it implies.

pub mod direct;
pub mod gaussian;
pub mod linalg;
pub mod profile;
pub mod qsystem;
pub mod residuals;
pub mod towers;
pub mod tpoly;

pub use direct::{direct_sum, product_numeric};
pub use gaussian::{gaussian_moment, MomentTable};
pub use profile::{
    asymptotic_eval, build_profile, product_alpha, solve_c, AsymptoticProfile, ProfileBase, DEFAULT_ORDER, MAX_ORDER,
};
pub use qsystem::{q_residual, solve_q};
pub use residuals::{constraint_residuals, modularity_residuals, tolerance, Residuals, TermExpansion};
pub use towers::{bernoulli_exponent, c_tower, d_tower, d_tower_from, HalfEpsSeries};
pub use tpoly::{TPolynomial, UniPoly};
