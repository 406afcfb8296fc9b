//! The explicit proper divisor graph.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::Factorization;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Default refusal threshold for [`DivisorGraph::build`].
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// Unlabeled simple graph on `0..len` with one adjacency bitset per vertex.
///
/// All oracles work on this type so they never see divisor labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<VertexSet>,
}

impl SimpleGraph {
    pub fn empty(len: usize) -> Self {
        Self { adjacency: vec![VertexSet::new(len); len] }
    }

    pub fn from_edges(len: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(len);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop at {u}");
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].remove(v);
        self.adjacency[v].remove(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            out.extend(self.adjacency[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Self {
        let len = self.vertex_count();
        let adjacency = (0..len)
            .map(|v| {
                let mut row = self.adjacency[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Self { adjacency }
    }

    /// Induced subgraph on `keep`, reindexed in ascending order.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let idx: Vec<usize> = keep.iter().collect();
        let mut g = Self::empty(idx.len());
        for (a, &u) in idx.iter().enumerate() {
            for (b, &v) in idx.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }
}

impl AsRef<SimpleGraph> for SimpleGraph {
    fn as_ref(&self) -> &SimpleGraph {
        self
    }
}

/// The proper divisor graph of `n`: vertices are the proper divisors in
/// ascending order, `u ~ v` iff `n | uv`.
#[derive(Debug, Clone)]
pub struct DivisorGraph {
    factorization: Factorization,
    vertices: Vec<u64>,
    exponent_vectors: Vec<Vec<u32>>,
    graph: SimpleGraph,
}

impl DivisorGraph {
    pub fn build(f: &Factorization) -> Result<Self> {
        Self::build_with_cap(f, DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(f: &Factorization, cap: usize) -> Result<Self> {
        if f.is_prime() {
            return Err(Error::EmptyGraph(f.n()));
        }
        let count = f.proper_divisor_count();
        if count > cap as u64 {
            return Err(Error::TooManyVertices {
                vertices: usize::try_from(count).unwrap_or(usize::MAX),
                cap,
            });
        }
        let (vertices, exponent_vectors): (Vec<u64>, Vec<Vec<u32>>) =
            f.proper_divisors_with_exponents().into_iter().unzip();
        let n = u128::from(f.n());
        let mut graph = SimpleGraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if (u128::from(u) * u128::from(v)) % n == 0 {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(Self { factorization: f.clone(), vertices, exponent_vectors, graph })
    }

    pub fn n(&self) -> u64 {
        self.factorization.n()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// Proper divisors, ascending; position is the vertex index.
    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn exponent_vectors(&self) -> &[Vec<u32>] {
        &self.exponent_vectors
    }

    pub fn structure(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn index_of(&self, value: u64) -> Result<usize> {
        self.vertices
            .binary_search(&value)
            .map_err(|_| Error::NotAVertex { n: self.n(), value })
    }

    pub fn value(&self, index: usize) -> u64 {
        self.vertices[index]
    }

    pub fn degree_of(&self, v: u64) -> Result<usize> {
        Ok(self.graph.degree(self.index_of(v)?))
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: u64) -> Result<Vec<u64>> {
        let i = self.index_of(v)?;
        Ok(self.graph.neighbors(i).iter().map(|j| self.vertices[j]).collect())
    }

    pub fn is_edge(&self, u: u64, v: u64) -> Result<bool> {
        Ok(self.graph.adjacent(self.index_of(u)?, self.index_of(v)?))
    }

    /// Edges by value, `u < v`, lexicographic.
    pub fn edge_values(&self) -> Vec<(u64, u64)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(i, j)| (self.vertices[i], self.vertices[j]))
            .collect()
    }

    /// Map divisor values to vertex indices.
    pub fn indices_of(&self, values: &[u64]) -> Result<VertexSet> {
        let mut set = VertexSet::new(self.vertex_count());
        for &v in values {
            set.insert(self.index_of(v)?);
        }
        Ok(set)
    }

    pub fn values_of(&self, set: impl IntoIterator<Item = usize>) -> Vec<u64> {
        set.into_iter().map(|i| self.vertices[i]).collect()
    }

    /// Graphviz DOT, one `graph { ... }` block with integer node ids.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph upsilon_{} {{", self.n());
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edge_values() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            vertices: self.vertices.clone(),
            edges: self.edge_values().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl AsRef<SimpleGraph> for DivisorGraph {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}

/// Adjacency-list export: every edge once, `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub n: u64,
    pub vertices: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn build(n: u64) -> DivisorGraph {
        DivisorGraph::build(&factorize(n).unwrap()).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = build(12);
        assert_eq!(g.vertices(), [2, 3, 4, 6]);
        assert_eq!(g.edge_values(), [(2, 6), (3, 4), (4, 6)]);

        let g = build(8);
        assert_eq!(g.vertices(), [2, 4]);
        assert_eq!(g.edge_values(), [(2, 4)]);

        let g = build(30);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(
            g.edge_values(),
            [(2, 15), (3, 10), (5, 6), (6, 10), (6, 15), (10, 15)]
        );

        let g = build(9);
        assert_eq!(g.vertices(), [3]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn adjacency_queries() {
        let g = build(36);
        assert_eq!(g.degree_of(18).unwrap(), 4);
        assert_eq!(g.neighbors(18).unwrap(), [2, 4, 6, 12]);
        assert_eq!(build(12).degree_of(2).unwrap(), 1);
        assert!(build(8).is_edge(2, 4).unwrap());
        assert_eq!(g.degree_of(5), Err(Error::NotAVertex { n: 36, value: 5 }));
        assert!(g.is_edge(1, 2).is_err());
        assert!(g.neighbors(36).is_err());
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert_eq!(DivisorGraph::build(&factorize(7).unwrap()).unwrap_err(), Error::EmptyGraph(7));
        let f = factorize(720_720).unwrap();
        assert!(matches!(
            DivisorGraph::build_with_cap(&f, 100),
            Err(Error::TooManyVertices { vertices: 238, cap: 100 })
        ));
    }

    #[test]
    fn edges_near_u64_limit() {
        // n = 2^62 · 3: products of large divisors overflow u64
        let f = factorize((1u64 << 62) * 3).unwrap();
        let g = DivisorGraph::build(&f).unwrap();
        for (i, j) in g.structure().edges() {
            let s = &g.exponent_vectors()[i];
            let t = &g.exponent_vectors()[j];
            assert!(s.iter().zip(t).zip(f.factors()).all(|((a, b), p)| a + b >= p.exponent));
        }
        assert!(g.is_edge(1 << 61, 6).unwrap());
    }

    #[test]
    fn structural_invariants() {
        for n in 4..=5000u64 {
            let f = factorize(n).unwrap();
            if f.is_prime() {
                continue;
            }
            let g = DivisorGraph::build(&f).unwrap();
            assert_eq!(g.vertices(), f.proper_divisors());
            let s = g.structure();
            let mut degree_sum = 0;
            for u in 0..g.vertex_count() {
                assert!(!s.adjacent(u, u));
                degree_sum += s.degree(u);
                for v in 0..g.vertex_count() {
                    assert_eq!(s.adjacent(u, v), s.adjacent(v, u));
                    if u != v {
                        let divides = (g.value(u) * g.value(v)) % n == 0;
                        assert_eq!(s.adjacent(u, v), divides);
                    }
                }
            }
            assert_eq!(degree_sum % 2, 0);
            assert!(s.is_connected(), "n = {n}");
        }
    }

    #[test]
    fn exports() {
        let g = build(12);
        assert_eq!(
            g.to_dot(),
            "graph upsilon_12 {\n  2;\n  3;\n  4;\n  6;\n  2 -- 6;\n  3 -- 4;\n  4 -- 6;\n}\n"
        );
        assert_eq!(
            serde_json::to_string(&g.to_json()).unwrap(),
            r#"{"n":12,"vertices":[2,3,4,6],"edges":[[2,6],[3,4],[4,6]]}"#
        );
    }
}
