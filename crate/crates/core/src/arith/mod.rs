//! Sieves, prime-counting functions and the logarithmic integral.

mod counting;
mod divisors;
mod li;
mod sieve;

pub use counting::{
    chebyshev_psi, chebyshev_theta, johnston_integral_pi, johnston_integral_theta, mertens_sum, pi_minus_li, prime_pi,
    StepIntegralResult,
};
pub use divisors::{divisor_count_table, totient, totient_table};
#[cfg(test)]
pub(crate) use li::GAUSS_LEGENDRE_16;
pub use li::{exp_integral_e1, integral_of_li, log_integral};
pub use sieve::{isqrt, segmented_primes, small_primes, MangoldtTable, SieveConfig, DEFAULT_CEILING, DEFAULT_SEGMENT};
