//! Exact rational computations: closed forms, exhaustive enumeration of
//! small sorting networks, and brute-force laws of random subnetworks.
//!
//! Nothing in this module touches floating point except the decimal
//! rendering in [`export`].

mod brute;
mod enumerate;
pub mod export;
mod formulas;

use thiserror::Error;

pub use brute::{
    corollary2_probability, enumerated_swap_pmf, enumerated_swap_pmfs, expected_subnet_swaps_all,
    expected_subnet_swaps_bruteforce, subnet_first_vs_second_swap, subnet_law, swap_count_law,
    swap_count_laws, SwapCountLaw, COROLLARY2_NETWORKS,
};
pub use enumerate::{enumerate_networks, NetworkEnumerator, MAX_ROUTINE_N};
pub use formulas::{
    binomial, count_networks, factorial, falling_factorial, first_swap_pmf, first_swap_pmf_vec,
    half_integer, hypergeometric_pmf, lemma6_check, theorem1_expectation, Lemma6,
};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("enumeration needs 2 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
    #[error("n = 7 enumeration is expensive and must be explicitly allowed")]
    ExpensiveEnumeration,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub(crate) fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<(), ExactError> {
    if ok {
        Ok(())
    } else {
        Err(ExactError::Precondition(msg()))
    }
}

/// `p / q` as a [`Rational`].
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
