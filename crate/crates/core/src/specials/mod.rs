//! Special functions: digamma, log-Gamma, Hurwitz and Lerch zeta,
//! Dirichlet L-functions and the central constants.

mod constants;
mod gamma;
mod hurwitz;
mod jet;
mod lerch;
mod lfunc;

pub use constants::{c_of_q, c_of_q_closed_form, odd_primes, threshold_moduli, CentralConstants, CqValue};
pub use gamma::{digamma, ln_gamma};
pub use hurwitz::{hurwitz_jet, hurwitz_regular_jet, hurwitz_zeta, hurwitz_zeta_ds, shift_terms};
pub use jet::{Jet, SeriesScalar};
pub use lerch::lerch_phi;
pub use lfunc::{
    dirichlet_l, l_central_data, l_jet, l_logderiv, l_logderiv_prime, re_logderiv_half_closed_form, zeta_jet,
    zeta_logderiv, zeta_logderiv_prime, LCentralData, CENTRAL_ZERO_FLAG, MAX_L_MODULUS, ZERO_GUARD,
};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
