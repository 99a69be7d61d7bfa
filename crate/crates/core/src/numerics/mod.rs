//! Numerical building blocks: special functions, improper-integral
//! quadrature, bracketed root finding and derivative-free minimization.

pub mod quadrature;
pub mod roots;
pub mod simplex;
pub mod special;

pub use quadrature::{integrate_improper, integrate_improper_with, Domain, QuadratureOptions, QuadratureResult};
pub use roots::{find_root_bracketed, RootBracket};
pub use simplex::{minimize_simplex, minimize_simplex_with, SimplexOptions, SimplexResult};
pub use special::{digamma, harmonic_real, log_gamma, reg_inc_beta, EULER_GAMMA};
