//! The Polya urn with fractional ball counts, started from 3/2 white and
//! 3/2 black balls. Each step adds one ball whose color is white with
//! probability `white / (white + black)`.
//!
//! After `n - 2` steps, one plus the number of white balls added has the
//! law of the first swap location of a uniform `n`-particle network, and a
//! single urn path couples those first swaps across all `n` at once.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::exact::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "W",
            Color::Black => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UrnError {
    #[error("ball counts must be non-negative with a positive total")]
    InvalidState,
    #[error("exhaustive check limited to {max} additions, got {got}")]
    TooLong { max: usize, got: usize },
    #[error("need n >= 2, got {0}")]
    TooFewParticles(usize),
}

/// Current (possibly fractional) numbers of white and black balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnState {
    white: Rational,
    black: Rational,
}

impl UrnState {
    pub fn new(white: Rational, black: Rational) -> Result<Self, UrnError> {
        if white < Rational::zero() || black < Rational::zero() || (&white + &black).is_zero() {
            return Err(UrnError::InvalidState);
        }
        Ok(UrnState { white, black })
    }

    /// 3/2 white and 3/2 black.
    pub fn initial() -> Self {
        let half3 = Rational::new(3.into(), 2.into());
        UrnState {
            white: half3.clone(),
            black: half3,
        }
    }

    pub fn white(&self) -> &Rational {
        &self.white
    }

    pub fn black(&self) -> &Rational {
        &self.black
    }

    pub fn total(&self) -> Rational {
        &self.white + &self.black
    }

    pub fn white_probability(&self) -> Rational {
        &self.white / self.total()
    }

    pub fn probability_of(&self, color: Color) -> Rational {
        match color {
            Color::White => self.white_probability(),
            Color::Black => &self.black / self.total(),
        }
    }

    pub fn add(&mut self, color: Color) {
        match color {
            Color::White => self.white += Rational::one(),
            Color::Black => self.black += Rational::one(),
        }
    }

    /// Adds one ball. The color is white iff a uniform 64-bit integer `u`
    /// satisfies `u / 2^64 < white / total`, compared exactly; the 2^-64
    /// grid of the variate is the only approximation.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Color {
        let u = BigInt::from(rng.random::<u64>());
        let p = self.white_probability();
        let color = if u * p.denom() < p.numer() << 64 {
            Color::White
        } else {
            Color::Black
        };
        self.add(color);
        color
    }
}

/// Exact probability that the urn, started from 3/2 and 3/2, adds exactly
/// this sequence of colors.
pub fn sequence_probability(colors: &[Color]) -> Rational {
    let mut state = UrnState::initial();
    let mut prob = Rational::one();
    for &c in colors {
        prob *= state.probability_of(c);
        state.add(c);
    }
    prob
}

/// The law of `1 + #white` after `n - 2` additions, as a vector over
/// `k = 1..=n-1`: `C(n-2, k-1)` times the probability of `k-1` whites
/// followed by `n-k-1` blacks.
pub fn white_count_pmf(n: usize) -> Result<Vec<Rational>, UrnError> {
    if n < 2 {
        return Err(UrnError::TooFewParticles(n));
    }
    let steps = n - 2;
    Ok((0..=steps)
        .map(|whites| {
            let mut seq = vec![Color::White; whites];
            seq.resize(steps, Color::Black);
            let ways = binomial(steps as i64, whites as i64);
            Rational::from_integer(ways) * sequence_probability(&seq)
        })
        .collect())
}

/// One urn path read as first swap locations for every `n`:
/// `s(n) = 1 + #white among the first n - 2 additions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledPath {
    // values[i] = s(i + 2)
    values: Vec<u32>,
}

impl CoupledPath {
    /// `s(n)` for `2 <= n <= n_max`.
    pub fn at(&self, n: usize) -> u32 {
        self.values[n - 2]
    }

    pub fn n_max(&self) -> usize {
        self.values.len() + 1
    }

    /// `(n, s(n))` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.values.iter().enumerate().map(|(i, &s)| (i + 2, s))
    }

    /// Consecutive differences `s(n+1) - s(n)`.
    pub fn increments(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.windows(2).map(|w| w[1] as i64 - w[0] as i64)
    }

    /// CSV rows `n,s` with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,s\n");
        for (n, s) in self.iter() {
            out.push_str(&format!("{n},{s}\n"));
        }
        out
    }
}

pub fn coupled_first_swaps<R: Rng + ?Sized>(
    n_max: usize,
    rng: &mut R,
) -> Result<CoupledPath, UrnError> {
    if n_max < 2 {
        return Err(UrnError::TooFewParticles(n_max));
    }
    let mut state = UrnState::initial();
    let mut values = Vec::with_capacity(n_max - 1);
    let mut s = 1u32;
    values.push(s);
    for _ in 3..=n_max {
        if state.step(rng) == Color::White {
            s += 1;
        }
        values.push(s);
    }
    Ok(CoupledPath { values })
}

/// Longest color sequence checked exhaustively.
pub const MAX_EXCHANGEABILITY_LENGTH: usize = 12;

/// Checks that every color sequence of length `n - 2` with the same number
/// of whites has the same exact probability.
pub fn exchangeability_check(n: usize) -> Result<bool, UrnError> {
    if n < 2 {
        return Err(UrnError::TooFewParticles(n));
    }
    let len = n - 2;
    if len > MAX_EXCHANGEABILITY_LENGTH {
        return Err(UrnError::TooLong {
            max: MAX_EXCHANGEABILITY_LENGTH,
            got: len,
        });
    }
    let mut by_whites: Vec<Option<Rational>> = vec![None; len + 1];
    for bits in 0u32..1 << len {
        let seq: Vec<Color> = (0..len)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    Color::White
                } else {
                    Color::Black
                }
            })
            .collect();
        let p = sequence_probability(&seq);
        let slot = &mut by_whites[bits.count_ones() as usize];
        match slot {
            Some(q) if *q != p => return Ok(false),
            Some(_) => {}
            None => *slot = Some(p),
        }
    }
    Ok(true)
}
