//! Special functions used by the spectrum and normalization code: Gamma,
//! Beta, Pochhammer, the Gauss hypergeometric function and adaptive
//! quadrature. Everything is real-valued and pole-checked.

mod gamma;
mod hypergeometric;
mod quadrature;

pub use gamma::{
    beta, gamma, gamma_ratio, is_nonpositive_integer, ln_gamma, ln_gamma_signed, pochhammer, POLE_TOLERANCE,
};
pub use hypergeometric::{
    beta_integral_identity_check, hyp2f1, hyp2f1_asymptotic_split, hyp2f1_on, AsymptoticSplit, Branch, Hyp2f1Value,
    HypParams, MAX_SERIES_TERMS, SERIES_REL_TOL,
};
pub use quadrature::{integrate, integrate_with, IntegrateOptions, Quadrature};
