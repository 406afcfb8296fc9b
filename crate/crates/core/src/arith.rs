//! Factorization, proper divisors and the similarity relation.

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest trial divisor attempted by [`factorize`]. Every `n` up to
/// `TRIAL_DIVISION_LIMIT²` (10¹²) factors completely; larger `n` factor as
/// long as at most one prime factor exceeds the limit.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

/// Prime factorization in canonical order: exponents descending, ties
/// broken by ascending prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

/// Factor `n` by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut push = |m: &mut u64, p: u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push(PrimePower { prime: p, exponent: e });
        }
    };
    push(&mut m, 2);
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::FactorizationLimit { n, limit: TRIAL_DIVISION_LIMIT });
        }
        push(&mut m, d);
        d += 2;
    }
    if m > 1 {
        factors.push(PrimePower { prime: m, exponent: 1 });
    }
    factors.sort_by_key(|f| (Reverse(f.exponent), f.prime));
    Ok(Factorization { n, factors })
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct primes.
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.prime)
    }

    /// Exponent signature, descending.
    pub fn exponents(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.exponent).collect()
    }

    pub fn is_prime(&self) -> bool {
        self.exponents() == [1]
    }

    pub fn is_prime_power(&self) -> bool {
        self.k() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 1)
    }

    pub fn is_perfect_square(&self) -> bool {
        self.factors.iter().all(|f| f.exponent % 2 == 0)
    }

    /// Number of proper divisors, `(α₁+1)⋯(α_k+1) − 2`.
    pub fn proper_divisor_count(&self) -> u64 {
        self.factors.iter().map(|f| u64::from(f.exponent) + 1).product::<u64>() - 2
    }

    /// Proper divisors in ascending order.
    pub fn proper_divisors(&self) -> Vec<u64> {
        self.proper_divisors_with_exponents().into_iter().map(|(d, _)| d).collect()
    }

    /// Proper divisors in ascending order, each paired with its exponent
    /// vector over `self.factors()`.
    pub fn proper_divisors_with_exponents(&self) -> Vec<(u64, Vec<u32>)> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.proper_divisor_count() as usize);
        let mut s = vec![0u32; k];
        loop {
            // odometer increment over 0 ≤ s_i ≤ α_i
            let mut i = 0;
            while i < k && s[i] == self.factors[i].exponent {
                s[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            s[i] += 1;
            if s.iter().zip(&self.factors).all(|(&e, f)| e == f.exponent) {
                continue;
            }
            out.push((self.value_of(&s), s.clone()));
        }
        out.sort_unstable();
        out
    }

    /// `∏ p_i^{s_i}` for an exponent vector over `self.factors()`.
    pub fn value_of(&self, exponents: &[u32]) -> u64 {
        self.factors
            .iter()
            .zip(exponents)
            .map(|(f, &e)| f.prime.pow(e))
            .product()
    }

    /// Exponent vector of a divisor of `n`, or `None` if `d` does not
    /// divide `n`.
    pub fn exponents_of(&self, d: u64) -> Option<Vec<u32>> {
        if d == 0 || self.n % d != 0 {
            return None;
        }
        let mut rest = d;
        let v = self
            .factors
            .iter()
            .map(|f| {
                let mut e = 0;
                while rest % f.prime == 0 {
                    rest /= f.prime;
                    e += 1;
                }
                e
            })
            .collect();
        Some(v)
    }

    /// True iff `d` is a proper divisor of `n`.
    pub fn is_proper_divisor(&self, d: u64) -> bool {
        d > 1 && d < self.n && self.n % d == 0
    }

    /// Same number of primes and the same sorted exponent sequence.
    pub fn similar(&self, other: &Factorization) -> bool {
        self.exponents() == other.exponents()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

/// Number of proper divisors of the integer with the given exponent
/// vector, with `π(1) = π(p) = 0`.
pub(crate) fn pi_of_exponents(exponents: &[u32]) -> u64 {
    exponents.iter().map(|&e| u64::from(e) + 1).product::<u64>().saturating_sub(2)
}

/// `x * x` compared against `n` without overflow or floating point.
pub(crate) fn square_cmp(x: u64, n: u64) -> std::cmp::Ordering {
    (u128::from(x) * u128::from(x)).cmp(&u128::from(n))
}
