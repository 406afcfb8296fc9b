//! The automorphism group, built from the factorization.
//!
//! For `k ≥ 2` and `n ≠ p₁²p₂` every automorphism is induced by a
//! permutation of the primes that preserves exponents, acting on exponent
//! vectors. The group is then `S_{k_1} × ⋯ × S_{k_b}` over the blocks of
//! equal exponents. The remaining shapes (`n = p^α` and `n = p₁²p₂`) have
//! exactly one non-trivial automorphism each.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::arith::Factorization;
use crate::error::{Error, Result};
use crate::formulas::check_standing;
use crate::graph::DivisorGraph;

/// Default cap on the group order for [`enumerate_automorphisms`].
pub const DEFAULT_ORDER_CAP: u64 = 40_320;

/// Default cap above which [`AutGroup::to_json`] omits the element list.
pub const DEFAULT_JSON_ELEMENT_CAP: u64 = 720;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpecialCase {
    Generic,
    /// `n = p^α`: swap `p^{⌈α/2⌉−1}` and `p^{⌈α/2⌉}`.
    PrimePowerSwap,
    /// `n = p₁²p₂`: reverse the path `p₁ – p₁p₂ – p₁² – p₂`.
    PathReversal,
}

/// Primes sharing one exponent value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentBlock {
    pub exponent: u32,
    /// 0-based positions in the canonical factor order.
    pub prime_indices: Vec<usize>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    pub blocks: Vec<ExponentBlock>,
    pub block_count: usize,
    pub order: u64,
    /// Symmetric-group degrees `[k_1, …, k_b]`; empty for the special cases.
    pub structure: Vec<usize>,
    pub special_case: SpecialCase,
}

/// A vertex permutation: `images[i]` is the index of the image of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub images: Vec<usize>,
}

impl Automorphism {
    pub fn identity(len: usize) -> Self {
        Self { images: (0..len).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Automorphism { images }
    }

    /// `(v, image)` pairs by divisor value.
    pub fn value_pairs(&self, g: &DivisorGraph) -> Vec<(u64, u64)> {
        self.images.iter().enumerate().map(|(i, &j)| (g.value(i), g.value(j))).collect()
    }

    pub fn apply(&self, g: &DivisorGraph, value: u64) -> Result<u64> {
        Ok(g.value(self.images[g.index_of(value)?]))
    }

    /// Bijective and preserves both adjacency and non-adjacency.
    pub fn is_automorphism_of(&self, g: &DivisorGraph) -> bool {
        let len = g.vertex_count();
        if self.images.len() != len {
            return false;
        }
        let mut hit = vec![false; len];
        for &j in &self.images {
            if j >= len || std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        let s = g.structure();
        (0..len).all(|u| (u + 1..len).all(|v| s.adjacent(u, v) == s.adjacent(self.images[u], self.images[v])))
    }
}

fn equal_exponent_blocks(f: &Factorization) -> Vec<ExponentBlock> {
    f.factors()
        .iter()
        .enumerate()
        .chunk_by(|(_, p)| p.exponent)
        .into_iter()
        .map(|(exponent, group)| {
            let prime_indices: Vec<usize> = group.map(|(i, _)| i).collect();
            ExponentBlock { exponent, size: prime_indices.len(), prime_indices }
        })
        .collect()
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

pub fn aut_structure(f: &Factorization) -> Result<AutGroup> {
    check_standing(f)?;
    let blocks = equal_exponent_blocks(f);
    let block_count = blocks.len();
    let (special_case, order, structure) = if f.k() == 1 {
        (SpecialCase::PrimePowerSwap, 2, vec![])
    } else if f.exponents() == [2, 1] {
        (SpecialCase::PathReversal, 2, vec![])
    } else {
        let structure: Vec<usize> = blocks.iter().map(|b| b.size).collect();
        (SpecialCase::Generic, structure.iter().map(|&s| factorial(s)).product(), structure)
    };
    Ok(AutGroup { blocks, block_count, order, structure, special_case })
}

/// Every automorphism as an explicit vertex permutation, identity first.
///
/// Generic groups are listed lexicographically over the per-block prime
/// permutations in one-line notation, first block most significant.
pub fn enumerate_automorphisms(f: &Factorization, g: &DivisorGraph) -> Result<Vec<Automorphism>> {
    enumerate_automorphisms_with_cap(f, g, DEFAULT_ORDER_CAP)
}

pub fn enumerate_automorphisms_with_cap(
    f: &Factorization,
    g: &DivisorGraph,
    order_cap: u64,
) -> Result<Vec<Automorphism>> {
    let group = aut_structure(f)?;
    if group.order > order_cap {
        return Err(Error::GroupTooLarge { order: group.order, cap: order_cap });
    }
    let len = g.vertex_count();
    let ps: Vec<u64> = f.primes().collect();
    match group.special_case {
        SpecialCase::PrimePowerSwap => {
            let h = f.factors()[0].exponent.div_ceil(2);
            let u = g.index_of(ps[0].pow(h - 1))?;
            let v = g.index_of(ps[0].pow(h))?;
            let mut swap = Automorphism::identity(len);
            swap.images.swap(u, v);
            Ok(vec![Automorphism::identity(len), swap])
        }
        SpecialCase::PathReversal => {
            let (p, q) = (ps[0], ps[1]);
            let mut rev = Automorphism::identity(len);
            for (a, b) in [(p, q), (p * q, p * p)] {
                let (i, j) = (g.index_of(a)?, g.index_of(b)?);
                rev.images[i] = j;
                rev.images[j] = i;
            }
            Ok(vec![Automorphism::identity(len), rev])
        }
        SpecialCase::Generic => {
            let index: HashMap<&[u32], usize> =
                g.exponent_vectors().iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let per_block = group.blocks.iter().map(|b| {
                b.prime_indices.iter().copied().permutations(b.size).collect::<Vec<_>>()
            });
            let k = f.k();
            let all = per_block
                .multi_cartesian_product()
                .map(|choice| {
                    // sigma[i] = image of prime index i
                    let mut sigma = vec![0; k];
                    for (block, perm) in group.blocks.iter().zip(&choice) {
                        for (&from, &to) in block.prime_indices.iter().zip(perm) {
                            sigma[from] = to;
                        }
                    }
                    induced_permutation(g, &index, &sigma)
                })
                .collect();
            Ok(all)
        }
    }
}

/// The vertex map `∏ p_i^{s_i} ↦ ∏ p_{σ(i)}^{s_i}`.
fn induced_permutation(g: &DivisorGraph, index: &HashMap<&[u32], usize>, sigma: &[usize]) -> Automorphism {
    let images = g
        .exponent_vectors()
        .iter()
        .map(|s| {
            let mut t = vec![0; s.len()];
            for (i, &e) in s.iter().enumerate() {
                t[sigma[i]] = e;
            }
            index[t.as_slice()]
        })
        .collect();
    Automorphism { images }
}

/// Generators: per block of size ≥ 2, the transposition of its first two
/// primes and (size ≥ 3) the cycle through all of them. The special cases
/// have their single non-identity element.
pub fn generators(f: &Factorization, g: &DivisorGraph) -> Result<Vec<Automorphism>> {
    let group = aut_structure(f)?;
    if group.special_case != SpecialCase::Generic {
        return Ok(enumerate_automorphisms_with_cap(f, g, 2)?.split_off(1));
    }
    let index: HashMap<&[u32], usize> =
        g.exponent_vectors().iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let k = f.k();
    let from_sigma = |sigma: &[usize]| induced_permutation(g, &index, sigma);
    let mut gens = Vec::new();
    for b in group.blocks.iter().filter(|b| b.size >= 2) {
        let idx = &b.prime_indices;
        let mut sigma: Vec<usize> = (0..k).collect();
        sigma.swap(idx[0], idx[1]);
        gens.push(from_sigma(&sigma));
        if b.size >= 3 {
            let mut sigma: Vec<usize> = (0..k).collect();
            for w in 0..idx.len() {
                sigma[idx[w]] = idx[(w + 1) % idx.len()];
            }
            gens.push(from_sigma(&sigma));
        }
    }
    Ok(gens)
}

#[derive(Debug, Clone, Serialize)]
pub struct AutJson {
    pub order: u64,
    pub structure: Vec<usize>,
    pub generators: Vec<Vec<[u64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<[u64; 2]>>>,
}

impl AutGroup {
    /// JSON view; `elements` is omitted when the order exceeds `element_cap`.
    pub fn to_json(&self, f: &Factorization, g: &DivisorGraph, element_cap: u64) -> Result<AutJson> {
        let pairs = |a: &Automorphism| a.value_pairs(g).into_iter().map(|(v, w)| [v, w]).collect();
        let generators = generators(f, g)?.iter().map(pairs).collect();
        let elements = if self.order <= element_cap {
            Some(enumerate_automorphisms_with_cap(f, g, element_cap)?.iter().map(pairs).collect())
        } else {
            None
        };
        Ok(AutJson { order: self.order, structure: self.structure.clone(), generators, elements })
    }
}
