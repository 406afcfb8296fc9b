//! Constructive optimal colorings.
//!
//! * [`vertex_coloring`] colors with exactly ω colors for every admissible `n`.
//! * [`edge_coloring_prime_power`] and [`edge_coloring_squarefree`] color the
//!   edges with exactly Δ colors for `n = p^α` and `n = p₁⋯p_k`. No
//!   constructive Δ-edge-coloring is known for other `n`; callers fall back
//!   to [`search_edge_coloring`] on small instances.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{square_cmp, Factorization};
use crate::error::{Error, Result};
use crate::formulas::{check_standing, clique_number, clique_witness, delta};
use crate::graph::DivisorGraph;
use crate::oracles::{bf_edge_coloring, OracleBudget, OracleResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    /// Color of each vertex, keyed by divisor value.
    pub color_of: BTreeMap<u64, usize>,
    pub color_count: usize,
    /// `(w_i, c_i)` for each prime index `i`, in canonical prime order.
    pub anchor_vertices: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    /// `n = p^α`, colored by `uv/n = p^j`.
    PrimePower,
    /// Squarefree, `1 < uv/n < √n`.
    TypeI,
    /// Squarefree, `√n < uv/n < n`.
    TypeII,
    /// Squarefree, `uv = n`; takes the lowest color free at both ends.
    TypeIII,
    /// Produced by exhaustive search.
    Search,
}

impl EdgeKind {
    pub fn tag(self) -> &'static str {
        match self {
            EdgeKind::PrimePower => "prime-power",
            EdgeKind::TypeI => "Type-I",
            EdgeKind::TypeII => "Type-II",
            EdgeKind::TypeIII => "Type-III",
            EdgeKind::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Normalized color id per edge `(u, v)`, `u < v`.
    pub color_of: BTreeMap<(u64, u64), usize>,
    pub color_count: usize,
    pub edge_type: BTreeMap<(u64, u64), EdgeKind>,
    /// Divisor label behind each normalized color id: `j` for `c_j`. For
    /// squarefree `n` this is the index set `I`.
    pub index_set: Vec<u64>,
}

impl EdgeColoring {
    /// Divisor label `j` of the color `c_j` on an edge.
    pub fn label_of(&self, edge: (u64, u64)) -> Option<u64> {
        self.color_of.get(&edge).map(|&c| self.index_set[c])
    }
}

/// `{"colors": N, "assignment": [[vertex, color], ...]}`.
impl Serialize for VertexColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let assignment: Vec<(u64, usize)> = self.color_of.iter().map(|(&v, &c)| (v, c)).collect();
        let mut st = s.serialize_struct("VertexColoring", 2)?;
        st.serialize_field("colors", &self.color_count)?;
        st.serialize_field("assignment", &assignment)?;
        st.end()
    }
}

/// `{"colors": N, "assignment": [[[u, v], color], ...]}` with `u < v`.
impl Serialize for EdgeColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let assignment: Vec<([u64; 2], usize)> =
            self.color_of.iter().map(|(&(u, v), &c)| ([u, v], c)).collect();
        let mut st = s.serialize_struct("EdgeColoring", 2)?;
        st.serialize_field("colors", &self.color_count)?;
        st.serialize_field("assignment", &assignment)?;
        st.end()
    }
}

/// ω-coloring: the clique `A ∪ B` gets distinct colors (ascending vertex
/// order); every other vertex `u` copies the color of the anchor `w_t`, `t`
/// the first index with `p_t^{⌈α_t/2⌉} ∤ u`.
pub fn vertex_coloring(f: &Factorization) -> Result<VertexColoring> {
    check_standing(f)?;
    let clique = clique_witness(f)?.vertices();
    let mut color_of: BTreeMap<u64, usize> =
        clique.iter().enumerate().map(|(c, &v)| (v, c)).collect();

    let half: Vec<u32> = f.exponents().iter().map(|a| a.div_ceil(2)).collect();
    let anchors: Vec<(u64, usize)> = f
        .factors()
        .iter()
        .zip(&half)
        .map(|(p, &h)| {
            // odd α: exponent h - 1 on p_i; even α: exponent h; all others full
            let drop = if p.exponent % 2 == 1 { p.exponent - (h - 1) } else { p.exponent - h };
            let w = f.n() / p.prime.pow(drop);
            (w, color_of[&w])
        })
        .collect();

    for u in f.proper_divisors() {
        if color_of.contains_key(&u) {
            continue;
        }
        let t = f
            .factors()
            .iter()
            .zip(&half)
            .position(|(p, &h)| u % p.prime.pow(h) != 0)
            .expect("every vertex outside the clique misses some p_i^{⌈α_i/2⌉}");
        color_of.insert(u, anchors[t].1);
    }

    Ok(VertexColoring { color_of, color_count: clique_number(f)? as usize, anchor_vertices: anchors })
}

/// Δ-edge-coloring of `n = p^α`: edge `{u, v}` gets `c_j` where `uv/n = p^j`.
pub fn edge_coloring_prime_power(f: &Factorization) -> Result<EdgeColoring> {
    let [pp] = f.factors() else {
        return Err(Error::NotPrimePower(f.n()));
    };
    if pp.exponent < 3 {
        return Err(Error::NotPrimePower(f.n()));
    }
    let alpha = pp.exponent;
    let mut color_of = BTreeMap::new();
    let mut edge_type = BTreeMap::new();
    for (u, v) in edges_by_exponents(f) {
        let (s, t) = (exponent_of(u, pp.prime), exponent_of(v, pp.prime));
        let j = (s + t - alpha) as usize;
        color_of.insert((u, v), j);
        edge_type.insert((u, v), EdgeKind::PrimePower);
    }
    let count = (alpha - 2) as usize;
    Ok(EdgeColoring {
        color_of,
        color_count: count,
        edge_type,
        index_set: (0..count as u64).collect(),
    })
}

/// Δ-edge-coloring of squarefree `n = p₁⋯p_k`, `k ≥ 2`.
pub fn edge_coloring_squarefree(f: &Factorization) -> Result<EdgeColoring> {
    if f.k() < 2 || !f.is_squarefree() {
        return Err(Error::NotSquarefree(f.n()));
    }
    let n = f.n();
    let index_set: Vec<u64> = f
        .proper_divisors()
        .into_iter()
        .filter(|&j| square_cmp(j, n) == Ordering::Less)
        .collect();
    let color_id: BTreeMap<u64, usize> = index_set.iter().enumerate().map(|(c, &j)| (j, c)).collect();

    let mut color_of = BTreeMap::new();
    let mut edge_type = BTreeMap::new();
    let mut type_three = Vec::new();
    for (u, v) in edges_by_exponents(f) {
        let l = ((u128::from(u) * u128::from(v)) / u128::from(n)) as u64;
        if l == 1 {
            type_three.push((u, v));
            edge_type.insert((u, v), EdgeKind::TypeIII);
        } else if square_cmp(l, n) == Ordering::Less {
            color_of.insert((u, v), color_id[&l]);
            edge_type.insert((u, v), EdgeKind::TypeI);
        } else {
            color_of.insert((u, v), color_id[&(n / l)]);
            edge_type.insert((u, v), EdgeKind::TypeII);
        }
    }

    // Ascending smaller endpoint; lowest free color.
    type_three.sort_unstable();
    for (x, y) in type_three {
        let mut used = vec![false; index_set.len()];
        for (&(a, b), &c) in &color_of {
            if a == x || a == y || b == x || b == y {
                used[c] = true;
            }
        }
        let c = used.iter().position(|u| !u).ok_or(Error::NoFreeColor { u: x, v: y })?;
        color_of.insert((x, y), c);
    }

    Ok(EdgeColoring { color_of, color_count: index_set.len(), edge_type, index_set })
}

fn exponent_of(mut d: u64, p: u64) -> u32 {
    let mut e = 0;
    while d % p == 0 {
        d /= p;
        e += 1;
    }
    e
}

/// Edges `(u, v)`, `u < v`, from exponent vectors: `s_i + t_i ≥ α_i` for all `i`.
fn edges_by_exponents(f: &Factorization) -> Vec<(u64, u64)> {
    let divs = f.proper_divisors_with_exponents();
    let mut out = Vec::new();
    for (i, (u, s)) in divs.iter().enumerate() {
        for (v, t) in &divs[i + 1..] {
            if s.iter().zip(t).zip(f.factors()).all(|((a, b), p)| a + b >= p.exponent) {
                out.push((*u, *v));
            }
        }
    }
    out
}

/// Proper, covers every vertex of `g`, and `color_count` equals the number
/// of distinct colors used.
pub fn validate_vertex_coloring(g: &DivisorGraph, c: &VertexColoring) -> Result<bool> {
    if c.color_of.len() != g.vertex_count() || g.vertices().iter().any(|v| !c.color_of.contains_key(v)) {
        return Err(Error::DomainMismatch(format!(
            "vertex coloring of {} vertices for a graph on {}",
            c.color_of.len(),
            g.vertex_count()
        )));
    }
    let proper = g.edge_values().iter().all(|(u, v)| c.color_of[u] != c.color_of[v]);
    let mut used: Vec<usize> = c.color_of.values().copied().collect();
    used.sort_unstable();
    used.dedup();
    Ok(proper && used.len() == c.color_count)
}

/// Proper, covers every edge of `g`, and `color_count` equals the number of
/// distinct colors used.
pub fn validate_edge_coloring(g: &DivisorGraph, c: &EdgeColoring) -> Result<bool> {
    let edges = g.edge_values();
    if c.color_of.len() != edges.len() || edges.iter().any(|e| !c.color_of.contains_key(e)) {
        return Err(Error::DomainMismatch(format!(
            "edge coloring of {} edges for a graph with {}",
            c.color_of.len(),
            edges.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for (&(u, v), &color) in &c.color_of {
        for end in [u, v] {
            if !seen.insert((end, color)) {
                return Ok(false);
            }
        }
    }
    let mut used: Vec<usize> = c.color_of.values().copied().collect();
    used.sort_unstable();
    used.dedup();
    Ok(used.len() == c.color_count)
}

/// Constructive Δ-edge-coloring when one exists for the shape of `n`.
pub fn constructive_edge_coloring(f: &Factorization) -> Option<Result<EdgeColoring>> {
    if check_standing(f).is_err() {
        return None;
    }
    if f.is_prime_power() {
        Some(edge_coloring_prime_power(f))
    } else if f.is_squarefree() {
        Some(edge_coloring_squarefree(f))
    } else {
        None
    }
}

/// Minimum edge coloring of any graph by exhaustive search, within budget.
/// Colors are labeled by their ids.
pub fn search_edge_coloring(g: &DivisorGraph, budget: &OracleBudget) -> OracleResult<EdgeColoring> {
    let (count, colors) = bf_edge_coloring(g, budget)?;
    let edges = g.edge_values();
    Ok(EdgeColoring {
        color_of: edges.iter().copied().zip(colors).collect(),
        color_count: count,
        edge_type: edges.iter().map(|&e| (e, EdgeKind::Search)).collect(),
        index_set: (0..count as u64).collect(),
    })
}

/// Δ for the edge colorings above.
pub fn target_edge_colors(f: &Factorization) -> Result<usize> {
    Ok(delta(f)? as usize)
}
