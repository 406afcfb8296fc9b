//! Closed-form invariants and witness sets, computed from the factorization
//! alone. Nothing here looks at the explicit graph.
//!
//! Indices follow the canonical order of [`Factorization`]: `p_1` carries
//! the largest exponent, ties broken by the smaller prime.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::{pi_of_exponents, square_cmp, Factorization};
use crate::error::{Error, Result};
use crate::report::ParameterReport;

/// Rejects `n` whose graph is empty (`n` prime) or `K₁` (`n = p²`).
pub fn check_standing(f: &Factorization) -> Result<()> {
    match f.exponents().as_slice() {
        [1] => Err(Error::EmptyGraph(f.n())),
        [2] => Err(Error::ExponentBelowThree(f.n())),
        _ => Ok(()),
    }
}

fn exps(f: &Factorization) -> Vec<u32> {
    f.exponents()
}

fn primes(f: &Factorization) -> Vec<u64> {
    f.primes().collect()
}

/// `n = p³`.
fn is_prime_cube(f: &Factorization) -> bool {
    exps(f) == [3]
}

/// `n = p₁p₂`.
fn is_two_primes(f: &Factorization) -> bool {
    exps(f) == [1, 1]
}

/// `n = p₁²p₂`.
fn is_p2q(f: &Factorization) -> bool {
    exps(f) == [2, 1]
}

/// `n / p_i` for every prime index.
fn co_primes(f: &Factorization) -> Vec<u64> {
    f.primes().map(|p| f.n() / p).collect()
}

/// Degree of the proper divisor `u`: `π(u)` if `n | u²`, else `π(u) + 1`.
pub fn degree(f: &Factorization, u: u64) -> Result<u64> {
    if !f.is_proper_divisor(u) {
        return Err(Error::NotAVertex { n: f.n(), value: u });
    }
    let s = f.exponents_of(u).expect("u divides n");
    let pi = pi_of_exponents(&s);
    let n_divides_square = s.iter().zip(f.factors()).all(|(&e, p)| 2 * e >= p.exponent);
    Ok(if n_divides_square { pi } else { pi + 1 })
}

pub fn pendant_vertices(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    let ps = primes(f);
    Ok(match exps(f).as_slice() {
        [3] | [4] => vec![ps[0], ps[0] * ps[0]],
        [_] => vec![ps[0]],
        _ => ps,
    })
}

pub fn pendant_count(f: &Factorization) -> Result<usize> {
    Ok(pendant_vertices(f)?.len())
}

pub fn degree_two_vertices(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    let ps = primes(f);
    let p = ps[0];
    Ok(match exps(f).as_slice() {
        [3] | [1, 1] => vec![],
        [4] => vec![p.pow(3)],
        [5] | [6] => vec![p.pow(2), p.pow(3)],
        [2, 1] => vec![p * p, p * ps[1]],
        [2, 2] => vec![p * p, ps[1] * ps[1], p * ps[1]],
        e => ps
            .iter()
            .zip(e)
            .filter(|(_, &a)| a >= 2)
            .map(|(&q, _)| q * q)
            .collect(),
    })
}

pub fn diameter(f: &Factorization) -> Result<u32> {
    check_standing(f)?;
    Ok(if is_prime_cube(f) || is_two_primes(f) {
        1
    } else if f.is_prime_power() {
        2
    } else {
        3
    })
}

/// Largest `t` with `α_t = α_1` (1-based).
pub fn largest_tied_index(f: &Factorization) -> usize {
    let e = exps(f);
    e.iter().take_while(|&&a| a == e[0]).count()
}

/// Number of odd exponents.
pub fn odd_exponent_count(f: &Factorization) -> usize {
    exps(f).iter().filter(|&&a| a % 2 == 1).count()
}

pub fn max_degree_vertices(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    let ps = primes(f);
    if is_prime_cube(f) {
        return Ok(vec![ps[0], ps[0] * ps[0]]);
    }
    if is_p2q(f) {
        return Ok(vec![ps[0] * ps[1], ps[0] * ps[0]]);
    }
    let t = largest_tied_index(f);
    Ok(co_primes(f).into_iter().take(t).collect())
}

pub fn max_degree_count(f: &Factorization) -> Result<usize> {
    Ok(max_degree_vertices(f)?.len())
}

/// Maximum degree Δ.
pub fn delta(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    let mut s = exps(f);
    s[0] -= 1;
    let pi = pi_of_exponents(&s);
    Ok(if f.k() == 1 || f.factors()[0].exponent >= 2 { pi } else { pi + 1 })
}

pub fn cut_vertices(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    if is_prime_cube(f) || is_two_primes(f) {
        return Ok(vec![]);
    }
    Ok(co_primes(f))
}

/// A maximum clique split as `A ∪ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    /// Divisors with every exponent `r_i ≥ ⌈α_i/2⌉`, excluding `n`.
    pub set_a: Vec<u64>,
    /// `n / p_j^{⌈α_j/2⌉}` for each odd `α_j`.
    pub set_b: Vec<u64>,
}

impl CliqueWitness {
    /// `A ∪ B`, ascending.
    pub fn vertices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.set_a.iter().chain(&self.set_b).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.set_a.len() + self.set_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn clique_number(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    let l = odd_exponent_count(f) as u64;
    let product: u64 = exps(f)
        .iter()
        .map(|&a| if a % 2 == 1 { u64::from(a.div_ceil(2)) } else { u64::from(a / 2 + 1) })
        .product();
    Ok(product + l - 1)
}

pub fn clique_witness(f: &Factorization) -> Result<CliqueWitness> {
    check_standing(f)?;
    let half: Vec<u32> = exps(f).iter().map(|a| a.div_ceil(2)).collect();
    let top = exps(f);
    let mut set_a = Vec::new();
    let mut r = half.clone();
    'outer: loop {
        if r != top {
            set_a.push(f.value_of(&r));
        }
        for i in 0..r.len() {
            if r[i] < top[i] {
                r[i] += 1;
                continue 'outer;
            }
            r[i] = half[i];
        }
        break;
    }
    set_a.sort_unstable();
    let set_b = f
        .factors()
        .iter()
        .zip(&half)
        .filter(|(p, _)| p.exponent % 2 == 1)
        .map(|(p, &h)| f.n() / p.prime.pow(h))
        .collect();
    Ok(CliqueWitness { set_a, set_b })
}

pub fn chromatic_number(f: &Factorization) -> Result<u64> {
    clique_number(f)
}

pub fn matching_number(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    Ok(f.proper_divisor_count() / 2)
}

/// The pairs `{x, n/x}` with `x < √n`, ordered by `x`.
pub fn matching_witness(f: &Factorization) -> Result<Vec<(u64, u64)>> {
    check_standing(f)?;
    Ok(f.proper_divisors()
        .into_iter()
        .filter(|&x| square_cmp(x, f.n()) == Ordering::Less)
        .map(|x| (x, f.n() / x))
        .collect())
}

pub fn has_perfect_matching(f: &Factorization) -> Result<bool> {
    check_standing(f)?;
    Ok(!f.is_perfect_square())
}

pub fn edge_cover_number(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    Ok(f.proper_divisor_count().div_ceil(2))
}

pub fn vertex_cover_number(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    Ok(f.proper_divisor_count() / 2)
}

pub fn independence_number(f: &Factorization) -> Result<u64> {
    check_standing(f)?;
    Ok(f.proper_divisor_count().div_ceil(2))
}

/// Proper divisors `x ≤ √n`, ascending.
pub fn independent_witness(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    Ok(f.proper_divisors()
        .into_iter()
        .filter(|&x| square_cmp(x, f.n()) != Ordering::Greater)
        .collect())
}

pub fn domination_number(f: &Factorization) -> Result<u64> {
    Ok(dominating_witness(f)?.len() as u64)
}

/// `{n/p_1, …, n/p_k}`, or just `{n/p_1}` when `n = p₁p₂`.
pub fn dominating_witness(f: &Factorization) -> Result<Vec<u64>> {
    check_standing(f)?;
    let mut y = co_primes(f);
    if is_two_primes(f) {
        y.truncate(1);
    }
    Ok(y)
}

pub fn chromatic_index(f: &Factorization) -> Result<u64> {
    delta(f)
}

/// Perfect iff the signature is `(α)`, `(α, β)`, `(α, 1, 1)` or `(1, 1, 1, 1)`.
pub fn is_perfect(f: &Factorization) -> Result<bool> {
    check_standing(f)?;
    Ok(matches!(exps(f).as_slice(), [_] | [_, _] | [_, 1, 1] | [1, 1, 1, 1]))
}

/// Graph isomorphism from the factorizations: similar, or one is `p³` and
/// the other `q₁q₂` (both `K₂`).
pub fn isomorphic(f1: &Factorization, f2: &Factorization) -> Result<bool> {
    check_standing(f1)?;
    check_standing(f2)?;
    let k2 = |f: &Factorization| is_prime_cube(f) || is_two_primes(f);
    Ok(f1.similar(f2) || (k2(f1) && k2(f2)))
}

/// Every closed-form parameter for one `n`.
pub fn report(f: &Factorization) -> Result<ParameterReport> {
    check_standing(f)?;
    let pendant_vertices = pendant_vertices(f)?;
    let max_degree_vertices = max_degree_vertices(f)?;
    Ok(ParameterReport {
        n: f.n(),
        pi_n: f.proper_divisor_count(),
        pendant_count: pendant_vertices.len(),
        pendant_vertices,
        degree_two_vertices: degree_two_vertices(f)?,
        diameter: diameter(f)?,
        max_degree_count: max_degree_vertices.len(),
        max_degree_vertices,
        delta: delta(f)?,
        cut_vertices: cut_vertices(f)?,
        clique_number: clique_number(f)?,
        chromatic_number: chromatic_number(f)?,
        matching_number: matching_number(f)?,
        edge_cover_number: edge_cover_number(f)?,
        independence_number: independence_number(f)?,
        vertex_cover_number: vertex_cover_number(f)?,
        domination_number: domination_number(f)?,
        chromatic_index: chromatic_index(f)?,
        is_perfect: is_perfect(f)?,
        odd_exponent_count: odd_exponent_count(f),
        largest_tied_index: largest_tied_index(f),
    })
}
