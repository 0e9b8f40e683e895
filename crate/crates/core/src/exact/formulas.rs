use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{precondition, ExactError, Rational};
use crate::network::pair_count;
use crate::tableau::staircase_hook_product;

pub fn factorial(r: u64) -> BigUint {
    (1..=r).fold(BigUint::one(), |acc, i| acc * i)
}

/// `a choose b`, zero whenever `b` is outside `[0, a]`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `k - 1/2`.
pub fn half_integer(k: i64) -> Rational {
    Rational::new(BigInt::from(2 * k - 1), BigInt::from(2))
}

/// The falling factorial `(a)_r = a (a - 1) ... (a - r + 1)`, with `(a)_0 = 1`.
pub fn falling_factorial(a: &Rational, r: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..r {
        acc *= &factor;
        factor -= Rational::one();
    }
    acc
}

/// `(k - 1/2)_{k-1} (m - k - 1/2)_{m-k-1} / ((k-1)! (m-k-1)!)` for `1 <= k <= m-1`.
fn half_integer_weight(m: i64, k: i64) -> Rational {
    let left = falling_factorial(&half_integer(k), (k - 1) as u64);
    let right = falling_factorial(&half_integer(m - k), (m - k - 1) as u64);
    let denom = factorial((k - 1) as u64) * factorial((m - k - 1) as u64);
    left * right / Rational::from_integer(BigInt::from(denom))
}

/// Law of the first swap location of a uniform `n`-particle network;
/// zero outside `1..=n-1`.
pub fn first_swap_pmf(n: usize, k: i64) -> Rational {
    let n = n as i64;
    if n < 2 || k < 1 || k > n - 1 {
        return Rational::zero();
    }
    half_integer_weight(n, k) / Rational::from_integer(BigInt::from(pair_count(n as usize)))
}

/// `first_swap_pmf(n, k)` for `k = 1..=n-1`.
pub fn first_swap_pmf_vec(n: usize) -> Vec<Rational> {
    (1..n as i64).map(|k| first_swap_pmf(n, k)).collect()
}

/// Expected number of swaps at location `j` in a random `m`-particle
/// subnetwork of a uniform network on any number of particles.
pub fn theorem1_expectation(m: usize, j: usize) -> Result<Rational, ExactError> {
    precondition(m >= 2 && (1..m).contains(&j), || {
        format!("need m >= 2 and 1 <= j <= m-1, got m={m}, j={j}")
    })?;
    Ok(half_integer_weight(m as i64, j as i64))
}

/// Number of `n`-particle sorting networks: the number of standard Young
/// tableaux of staircase shape, `N! / prod(hooks)`.
pub fn count_networks(n: usize) -> BigUint {
    let total = factorial(pair_count(n) as u64);
    total / staircase_hook_product(n)
}

/// Probability of `i` white balls when `m` are drawn without replacement
/// from `n` balls of which `k` are white.
pub fn hypergeometric_pmf(n: i64, m: i64, k: i64, i: i64) -> Result<Rational, ExactError> {
    precondition((0..=n).contains(&m) && (0..=n).contains(&k), || {
        format!("need 0 <= m, k <= n, got n={n}, m={m}, k={k}")
    })?;
    Ok(Rational::new(
        binomial(k, i) * binomial(n - k, m - i),
        binomial(n, m),
    ))
}

/// Both sides of the hypergeometric mixture identity
/// `sum_k p_n(k) h^{n-2}_{m-2,k-1}(j-1) = p_m(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma6 {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Lemma6 {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn lemma6_check(n: usize, m: usize, j: usize) -> Result<Lemma6, ExactError> {
    precondition(m >= 2 && m <= n && (1..m).contains(&j), || {
        format!("need 2 <= m <= n and 1 <= j <= m-1, got n={n}, m={m}, j={j}")
    })?;
    let (ni, mi, ji) = (n as i64, m as i64, j as i64);
    let mut lhs = Rational::zero();
    for k in 1..ni {
        let h = hypergeometric_pmf(ni - 2, mi - 2, k - 1, ji - 1)?;
        if !h.is_zero() {
            lhs += first_swap_pmf(n, k) * h;
        }
    }
    Ok(Lemma6 {
        lhs,
        rhs: first_swap_pmf(m, ji),
    })
}
