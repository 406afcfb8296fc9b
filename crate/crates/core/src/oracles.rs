//! Exact brute-force solvers on the explicit graph.
//!
//! Nothing in this module knows about divisors or factorizations: every
//! function takes a [`SimpleGraph`] (or anything that dereferences to one)
//! and computes the optimum by exhaustive search. These are the ground
//! truth the closed forms in [`crate::formulas`] are checked against.
//!
//! All searches are deterministic. Each one checks its vertex cap before
//! starting and, for the exponential ones, a wall-clock deadline while
//! running; both failures surface as [`OracleError`], never as a wrong
//! answer.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{oracle} skipped: {size} {what} over the cap of {cap}")]
    OverBudget { oracle: &'static str, what: &'static str, size: usize, cap: usize },

    #[error("{oracle} skipped: no answer within {limit:?}")]
    Timeout { oracle: &'static str, limit: Duration },

    #[error("{oracle} undefined: {reason}")]
    Undefined { oracle: &'static str, reason: &'static str },

    #[error("{oracle}: independent routes disagree ({first} vs {second})")]
    Inconsistent { oracle: &'static str, first: usize, second: usize },
}

pub type OracleResult<T> = Result<T, OracleError>;

/// Per-oracle size caps and the per-instance time limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Clique, independence, matching and vertex cover.
    pub clique_cap: usize,
    pub chromatic_cap: usize,
    pub chromatic_index_cap: usize,
    pub dominating_cap: usize,
    /// Automorphism enumeration and isomorphism.
    pub automorphism_cap: usize,
    pub perfect_cap: usize,
    /// Direct edge-cover search, run alongside the matching route.
    pub edge_cover_direct_cap: usize,
    pub timeout: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 200,
            max_edges: 20_000,
            clique_cap: 200,
            chromatic_cap: 26,
            chromatic_index_cap: 26,
            dominating_cap: 26,
            automorphism_cap: 10,
            perfect_cap: 14,
            edge_cover_direct_cap: 12,
            timeout: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    fn admit(&self, oracle: &'static str, g: &SimpleGraph, cap: usize) -> OracleResult<Deadline> {
        let cap = cap.min(self.max_vertices);
        let v = g.vertex_count();
        if v > cap {
            return Err(OracleError::OverBudget { oracle, what: "vertices", size: v, cap });
        }
        let e = g.edge_count();
        if e > self.max_edges {
            return Err(OracleError::OverBudget { oracle, what: "edges", size: e, cap: self.max_edges });
        }
        Ok(Deadline::new(oracle, self.timeout))
    }
}

struct Deadline {
    oracle: &'static str,
    start: Instant,
    limit: Duration,
    ticks: u32,
}

impl Deadline {
    fn new(oracle: &'static str, limit: Duration) -> Self {
        Self { oracle, start: Instant::now(), limit, ticks: 0 }
    }

    #[inline]
    fn tick(&mut self) -> OracleResult<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 0 && self.start.elapsed() > self.limit {
            return Err(OracleError::Timeout { oracle: self.oracle, limit: self.limit });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Clique and independent set

/// A maximum clique, by branch and bound with a greedy-coloring bound.
pub fn max_clique(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<VertexSet> {
    let g = g.as_ref();
    let mut dl = budget.admit("max clique", g, budget.clique_cap)?;
    clique_search(g, &mut dl)
}

pub fn bf_max_clique(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(max_clique(g, budget)?.count())
}

/// A maximum independent set, as a maximum clique of the complement.
pub fn max_independent_set(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<VertexSet> {
    let g = g.as_ref();
    let mut dl = budget.admit("independence", g, budget.clique_cap)?;
    clique_search(&g.complement(), &mut dl)
}

pub fn bf_independence(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(max_independent_set(g, budget)?.count())
}

fn clique_search(g: &SimpleGraph, dl: &mut Deadline) -> OracleResult<VertexSet> {
    let len = g.vertex_count();
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand_clique(g, &mut current, VertexSet::full(len), &mut best, dl)?;
    Ok(VertexSet::from_indices(len, best))
}

/// Greedy sequential coloring of `p`; returns vertices with their color
/// (1-based), ordered by ascending color.
fn color_classes(g: &SimpleGraph, p: &VertexSet) -> Vec<(usize, usize)> {
    let mut uncolored = p.clone();
    let mut out = Vec::with_capacity(p.count());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(g.neighbors(v));
            uncolored.remove(v);
            out.push((v, color));
        }
    }
    out
}

fn expand_clique(
    g: &SimpleGraph,
    current: &mut Vec<usize>,
    mut p: VertexSet,
    best: &mut Vec<usize>,
    dl: &mut Deadline,
) -> OracleResult<()> {
    dl.tick()?;
    let order = color_classes(g, &p);
    for &(v, color) in order.iter().rev() {
        if current.len() + color <= best.len() {
            return Ok(());
        }
        current.push(v);
        let next = p.intersection(g.neighbors(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_clique(g, current, next, best, dl)?;
        }
        current.pop();
        p.remove(v);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Vertex coloring

/// Minimum number of colors, by backtracking with `c = ω, ω+1, …`.
pub fn bf_chromatic(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(min_vertex_coloring(g, budget)?.0)
}

/// `(χ, color per vertex)`.
pub fn min_vertex_coloring(
    g: impl AsRef<SimpleGraph>,
    budget: &OracleBudget,
) -> OracleResult<(usize, Vec<usize>)> {
    let g = g.as_ref();
    let mut dl = budget.admit("chromatic number", g, budget.chromatic_cap)?;
    let len = g.vertex_count();
    if len == 0 {
        return Ok((0, vec![]));
    }
    let lower = clique_search(g, &mut dl)?.count().max(1);
    for k in lower..=len {
        let mut colors = vec![None; len];
        if color_vertices(g, k, &mut colors, 0, &mut dl)? {
            return Ok((k, colors.into_iter().map(|c| c.expect("all colored")).collect()));
        }
    }
    unreachable!("n colors always suffice")
}

/// DSATUR-ordered backtracking: next vertex has the most distinct neighbor
/// colors; a fresh color is only ever the next unused one.
fn color_vertices(
    g: &SimpleGraph,
    k: usize,
    colors: &mut [Option<usize>],
    used: usize,
    dl: &mut Deadline,
) -> OracleResult<bool> {
    dl.tick()?;
    let mut pick: Option<(usize, usize, usize)> = None;
    for v in 0..colors.len() {
        if colors[v].is_some() {
            continue;
        }
        let mut seen = vec![false; k];
        let mut sat = 0;
        let mut free_degree = 0;
        for u in g.neighbors(v) {
            match colors[u] {
                Some(c) if !seen[c] => {
                    seen[c] = true;
                    sat += 1;
                }
                Some(_) => {}
                None => free_degree += 1,
            }
        }
        if pick.is_none_or(|(_, s, d)| (sat, free_degree) > (s, d)) {
            pick = Some((v, sat, free_degree));
        }
    }
    let Some((v, _, _)) = pick else { return Ok(true) };
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().any(|u| colors[u] == Some(c)) {
            continue;
        }
        colors[v] = Some(c);
        if color_vertices(g, k, colors, used.max(c + 1), dl)? {
            return Ok(true);
        }
        colors[v] = None;
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Edge coloring

/// Minimum number of edge colors.
pub fn bf_chromatic_index(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(bf_edge_coloring(g, budget)?.0)
}

/// `(χ', color per edge)` with edges in [`SimpleGraph::edges`] order.
/// Tries `Δ` colors, then `Δ + 1`, and so on.
pub fn bf_edge_coloring(
    g: impl AsRef<SimpleGraph>,
    budget: &OracleBudget,
) -> OracleResult<(usize, Vec<usize>)> {
    let g = g.as_ref();
    let mut dl = budget.admit("chromatic index", g, budget.chromatic_index_cap)?;
    let edges = g.edges();
    if edges.is_empty() {
        return Ok((0, vec![]));
    }
    let degree_sum: Vec<usize> = edges.iter().map(|&(u, v)| g.degree(u) + g.degree(v)).collect();
    let mut k = g.max_degree();
    loop {
        let mut state = EdgeSearch {
            edges: &edges,
            degree_sum: &degree_sum,
            colors: vec![None; edges.len()],
            at_vertex: vec![vec![false; k]; g.vertex_count()],
            k,
        };
        if state.run(0, &mut dl)? {
            return Ok((k, state.colors.into_iter().map(|c| c.expect("all colored")).collect()));
        }
        k += 1;
    }
}

struct EdgeSearch<'a> {
    edges: &'a [(usize, usize)],
    degree_sum: &'a [usize],
    colors: Vec<Option<usize>>,
    /// `at_vertex[v][c]`: color `c` already on an edge at `v`.
    at_vertex: Vec<Vec<bool>>,
    k: usize,
}

impl EdgeSearch<'_> {
    fn free(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.edges[e];
        !self.at_vertex[u][c] && !self.at_vertex[v][c]
    }

    fn set(&mut self, e: usize, c: Option<usize>) {
        let (u, v) = self.edges[e];
        let old = std::mem::replace(&mut self.colors[e], c);
        if let Some(o) = old {
            self.at_vertex[u][o] = false;
            self.at_vertex[v][o] = false;
        }
        if let Some(c) = c {
            self.at_vertex[u][c] = true;
            self.at_vertex[v][c] = true;
        }
    }

    /// Uncolored edge with the fewest free colors, ties to the largest
    /// endpoint-degree sum.
    fn run(&mut self, used: usize, dl: &mut Deadline) -> OracleResult<bool> {
        dl.tick()?;
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..self.edges.len() {
            if self.colors[e].is_some() {
                continue;
            }
            let options = (0..self.k).filter(|&c| self.free(e, c)).count();
            if options == 0 {
                return Ok(false);
            }
            let better = match pick {
                None => true,
                Some((b, opts)) => (options, std::cmp::Reverse(self.degree_sum[e]))
                    < (opts, std::cmp::Reverse(self.degree_sum[b])),
            };
            if better {
                pick = Some((e, options));
            }
        }
        let Some((e, _)) = pick else { return Ok(true) };
        for c in 0..self.k.min(used + 1) {
            if !self.free(e, c) {
                continue;
            }
            self.set(e, Some(c));
            if self.run(used.max(c + 1), dl)? {
                return Ok(true);
            }
            self.set(e, None);
        }
        Ok(false)
    }
}

// ---------------------------------------------------------------------------
// Matching and covers

/// A maximum matching as `(u, v)` pairs, `u < v`.
///
/// Branches only on the partner of one vertex: if a vertex `v` still has an
/// unmatched neighbor, some maximum matching of the remaining graph covers
/// `v`, so leaving it unmatched never needs exploring.
pub fn max_matching(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<Vec<(usize, usize)>> {
    let g = g.as_ref();
    let mut dl = budget.admit("matching", g, budget.clique_cap)?;
    let len = g.vertex_count();
    let mut best = Vec::new();
    let mut current = Vec::new();
    matching_search(g, VertexSet::full(len), &mut current, &mut best, len / 2, &mut dl)?;
    Ok(best)
}

pub fn bf_max_matching(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(max_matching(g, budget)?.len())
}

fn matching_search(
    g: &SimpleGraph,
    mut free: VertexSet,
    current: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
    ceiling: usize,
    dl: &mut Deadline,
) -> OracleResult<()> {
    dl.tick()?;
    loop {
        if best.len() == ceiling || current.len() + free.count() / 2 <= best.len() {
            return Ok(());
        }
        // free vertex with the fewest free neighbors
        let pick = free
            .iter()
            .map(|v| (g.neighbors(v).intersection_count(&free), v))
            .min();
        let Some((options, v)) = pick else { break };
        if options == 0 {
            free.remove(v);
            continue;
        }
        let partners = g.neighbors(v).intersection(&free);
        for u in &partners {
            let mut rest = free.clone();
            rest.remove(v);
            rest.remove(u);
            current.push((v.min(u), v.max(u)));
            matching_search(g, rest, current, best, ceiling, dl)?;
            current.pop();
            if best.len() == ceiling {
                return Ok(());
            }
        }
        return Ok(());
    }
    if current.len() > best.len() {
        *best = current.clone();
    }
    Ok(())
}

/// A minimum vertex cover.
pub fn min_vertex_cover(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<VertexSet> {
    let g = g.as_ref();
    let mut dl = budget.admit("vertex cover", g, budget.clique_cap)?;
    let len = g.vertex_count();
    let mut best = VertexSet::full(len);
    let mut cover = VertexSet::new(len);
    cover_search(g, VertexSet::full(len), &mut cover, &mut best, &mut dl)?;
    Ok(best)
}

pub fn bf_min_vertex_cover(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(min_vertex_cover(g, budget)?.count())
}

/// `alive`: undecided vertices; uncovered edges are exactly the edges
/// inside `alive`.
fn cover_search(
    g: &SimpleGraph,
    mut alive: VertexSet,
    cover: &mut VertexSet,
    best: &mut VertexSet,
    dl: &mut Deadline,
) -> OracleResult<()> {
    dl.tick()?;
    let mut forced = Vec::new();
    // degree 0: drop; degree 1: its neighbor joins the cover
    loop {
        let mut changed = false;
        for v in alive.clone().iter() {
            if !alive.contains(v) {
                continue;
            }
            let nbrs = g.neighbors(v).intersection(&alive);
            match nbrs.count() {
                0 => {
                    alive.remove(v);
                    changed = true;
                }
                1 => {
                    let u = nbrs.first().expect("one neighbor");
                    cover.insert(u);
                    forced.push(u);
                    alive.remove(u);
                    alive.remove(v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let undo = |cover: &mut VertexSet, forced: &[usize]| {
        for &u in forced {
            cover.remove(u);
        }
    };

    let size = cover.count();
    if alive.is_empty() {
        if size < best.count() {
            *best = cover.clone();
        }
        undo(cover, &forced);
        return Ok(());
    }
    // any matching inside `alive` needs one cover vertex per edge
    let mut lb_free = alive.clone();
    let mut lower = 0;
    while let Some(v) = lb_free.first() {
        lb_free.remove(v);
        if let Some(u) = g.neighbors(v).intersection(&lb_free).first() {
            lb_free.remove(u);
            lower += 1;
        }
    }
    if size + lower >= best.count() {
        undo(cover, &forced);
        return Ok(());
    }
    let v = alive
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection_count(&alive), std::cmp::Reverse(v)))
        .expect("alive is nonempty");

    // v in the cover
    let mut rest = alive.clone();
    rest.remove(v);
    cover.insert(v);
    cover_search(g, rest, cover, best, dl)?;
    cover.remove(v);

    // v out: all of its alive neighbors in
    let nbrs = g.neighbors(v).intersection(&alive);
    let mut rest = alive.clone();
    rest.remove(v);
    rest.difference_with(&nbrs);
    cover.union_with(&nbrs);
    cover_search(g, rest, cover, best, dl)?;
    cover.difference_with(&nbrs);

    undo(cover, &forced);
    Ok(())
}

/// Minimum edge cover size, from the maximum matching (`|V| − α'`) and, on
/// small graphs, by direct search as well; the two routes must agree.
pub fn bf_min_edge_cover(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    let g = g.as_ref();
    let oracle = "edge cover";
    if (0..g.vertex_count()).any(|v| g.degree(v) == 0) {
        return Err(OracleError::Undefined { oracle, reason: "isolated vertex" });
    }
    let via_matching = g.vertex_count() - bf_max_matching(g, budget)?;
    if g.vertex_count() <= budget.edge_cover_direct_cap {
        let direct = min_edge_cover_direct(g, budget)?.len();
        if direct != via_matching {
            return Err(OracleError::Inconsistent { oracle, first: via_matching, second: direct });
        }
    }
    Ok(via_matching)
}

/// Minimum edge cover by branch and bound over edges.
pub fn min_edge_cover_direct(
    g: impl AsRef<SimpleGraph>,
    budget: &OracleBudget,
) -> OracleResult<Vec<(usize, usize)>> {
    let g = g.as_ref();
    let mut dl = budget.admit("edge cover (direct)", g, budget.edge_cover_direct_cap)?;
    let len = g.vertex_count();
    if (0..len).any(|v| g.degree(v) == 0) {
        return Err(OracleError::Undefined { oracle: "edge cover (direct)", reason: "isolated vertex" });
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    edge_cover_search(g, VertexSet::full(len), &mut Vec::new(), &mut best, &mut dl)?;
    Ok(best.unwrap_or_default())
}

fn edge_cover_search(
    g: &SimpleGraph,
    uncovered: VertexSet,
    chosen: &mut Vec<(usize, usize)>,
    best: &mut Option<Vec<(usize, usize)>>,
    dl: &mut Deadline,
) -> OracleResult<()> {
    dl.tick()?;
    let need = uncovered.count().div_ceil(2);
    if best.as_ref().is_some_and(|b| chosen.len() + need >= b.len()) {
        return Ok(());
    }
    let Some(v) = uncovered.first() else {
        *best = Some(chosen.clone());
        return Ok(());
    };
    // prefer partners that also cover a second vertex
    let mut partners: Vec<usize> = g.neighbors(v).iter().collect();
    partners.sort_by_key(|&u| (!uncovered.contains(u), u));
    for u in partners {
        let mut rest = uncovered.clone();
        rest.remove(v);
        rest.remove(u);
        chosen.push((v.min(u), v.max(u)));
        edge_cover_search(g, rest, chosen, best, dl)?;
        chosen.pop();
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Domination

/// A minimum dominating set, by iterative deepening on its size.
pub fn min_dominating_set(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<VertexSet> {
    let g = g.as_ref();
    let mut dl = budget.admit("domination", g, budget.dominating_cap)?;
    let len = g.vertex_count();
    let closed: Vec<VertexSet> = (0..len)
        .map(|v| {
            let mut s = g.neighbors(v).clone();
            s.insert(v);
            s
        })
        .collect();
    for size in 0..=len {
        let mut chosen = Vec::new();
        if dominate(&closed, VertexSet::full(len), size, &mut chosen, &mut dl)? {
            return Ok(VertexSet::from_indices(len, chosen));
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn bf_min_dominating(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<usize> {
    Ok(min_dominating_set(g, budget)?.count())
}

fn dominate(
    closed: &[VertexSet],
    undominated: VertexSet,
    picks: usize,
    chosen: &mut Vec<usize>,
    dl: &mut Deadline,
) -> OracleResult<bool> {
    dl.tick()?;
    if undominated.is_empty() {
        return Ok(true);
    }
    if picks == 0 {
        return Ok(false);
    }
    let reach = closed.iter().map(|c| c.intersection_count(&undominated)).max().unwrap_or(0);
    if reach * picks < undominated.count() {
        return Ok(false);
    }
    // undominated vertex with the fewest ways to be dominated
    let v = undominated
        .iter()
        .min_by_key(|&v| closed[v].count())
        .expect("nonempty");
    for u in closed[v].iter() {
        let mut rest = undominated.clone();
        rest.difference_with(&closed[u]);
        chosen.push(u);
        if dominate(closed, rest, picks - 1, chosen, dl)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Distances, cut vertices, degrees

/// Largest BFS eccentricity.
pub fn bf_diameter(g: impl AsRef<SimpleGraph>) -> OracleResult<usize> {
    let g = g.as_ref();
    let mut diameter = 0;
    for s in 0..g.vertex_count() {
        for d in g.distances_from(s) {
            let d = d.ok_or(OracleError::Undefined { oracle: "diameter", reason: "disconnected graph" })?;
            diameter = diameter.max(d);
        }
    }
    Ok(diameter)
}

fn component_count(g: &SimpleGraph, alive: &VertexSet) -> usize {
    let mut unseen = alive.clone();
    let mut components = 0;
    while let Some(s) = unseen.first() {
        components += 1;
        let mut stack = vec![s];
        unseen.remove(s);
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u).intersection(&unseen).iter() {
                unseen.remove(w);
                stack.push(w);
            }
        }
    }
    components
}

/// Vertices whose deletion increases the number of components, ascending.
pub fn bf_cut_vertices(g: impl AsRef<SimpleGraph>) -> Vec<usize> {
    let g = g.as_ref();
    let all = VertexSet::full(g.vertex_count());
    let base = component_count(g, &all);
    (0..g.vertex_count())
        .filter(|&v| {
            let mut rest = all.clone();
            rest.remove(v);
            component_count(g, &rest) > base
        })
        .collect()
}

/// Degrees, ascending.
pub fn bf_degree_sequence(g: impl AsRef<SimpleGraph>) -> Vec<usize> {
    let g = g.as_ref();
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

// ---------------------------------------------------------------------------
// Automorphisms and isomorphism

/// Every adjacency-preserving bijection `g1 → g2` (stopping after the first
/// when `first_only`), as image vectors.
fn isomorphisms(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    first_only: bool,
    dl: &mut Deadline,
) -> OracleResult<Vec<Vec<usize>>> {
    let len = g1.vertex_count();
    if len != g2.vertex_count() || bf_degree_sequence(g1) != bf_degree_sequence(g2) {
        return Ok(vec![]);
    }
    // most constrained first: high degree, then index
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g1.degree(v)), v));
    let mut images = vec![usize::MAX; len];
    let mut used = vec![false; len];
    let mut out = Vec::new();
    extend_isomorphism(g1, g2, &order, 0, &mut images, &mut used, first_only, &mut out, dl)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_isomorphism(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    order: &[usize],
    depth: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    first_only: bool,
    out: &mut Vec<Vec<usize>>,
    dl: &mut Deadline,
) -> OracleResult<bool> {
    dl.tick()?;
    if depth == order.len() {
        out.push(images.clone());
        return Ok(first_only);
    }
    let v = order[depth];
    for w in 0..g2.vertex_count() {
        if used[w] || g1.degree(v) != g2.degree(w) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.adjacent(u, v) == g2.adjacent(images[u], w));
        if !consistent {
            continue;
        }
        images[v] = w;
        used[w] = true;
        let done = extend_isomorphism(g1, g2, order, depth + 1, images, used, first_only, out, dl)?;
        used[w] = false;
        images[v] = usize::MAX;
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All automorphisms as image vectors, sorted.
pub fn bf_automorphisms(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<Vec<Vec<usize>>> {
    let g = g.as_ref();
    let mut dl = budget.admit("automorphisms", g, budget.automorphism_cap)?;
    isomorphisms(g, g, false, &mut dl)
}

pub fn bf_isomorphic(
    g1: impl AsRef<SimpleGraph>,
    g2: impl AsRef<SimpleGraph>,
    budget: &OracleBudget,
) -> OracleResult<bool> {
    let (g1, g2) = (g1.as_ref(), g2.as_ref());
    budget.admit("isomorphism", g2, budget.automorphism_cap)?;
    let mut dl = budget.admit("isomorphism", g1, budget.automorphism_cap)?;
    Ok(!isomorphisms(g1, g2, true, &mut dl)?.is_empty())
}

// ---------------------------------------------------------------------------
// Perfectness

/// An induced odd cycle of length at least 5, in `g` or in its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddHole {
    /// Cycle order.
    pub cycle: Vec<usize>,
    /// The cycle lives in the complement (an odd antihole of `g`).
    pub in_complement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectVerdict {
    pub perfect: bool,
    pub witness: Option<OddHole>,
}

/// Perfect iff neither `g` nor its complement has an induced odd cycle of
/// length ≥ 5.
pub fn bf_perfect_verdict(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<PerfectVerdict> {
    let g = g.as_ref();
    let mut dl = budget.admit("perfectness", g, budget.perfect_cap)?;
    for (h, in_complement) in [(g.clone(), false), (g.complement(), true)] {
        if let Some(cycle) = find_odd_hole(&h, &mut dl)? {
            return Ok(PerfectVerdict { perfect: false, witness: Some(OddHole { cycle, in_complement }) });
        }
    }
    Ok(PerfectVerdict { perfect: true, witness: None })
}

pub fn bf_is_perfect(g: impl AsRef<SimpleGraph>, budget: &OracleBudget) -> OracleResult<bool> {
    Ok(bf_perfect_verdict(g, budget)?.perfect)
}

/// Induced cycles are grown as induced paths from their smallest vertex.
fn find_odd_hole(g: &SimpleGraph, dl: &mut Deadline) -> OracleResult<Option<Vec<usize>>> {
    for s in 0..g.vertex_count() {
        let mut path = vec![s];
        if let Some(c) = grow_induced_path(g, &mut path, dl)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn grow_induced_path(g: &SimpleGraph, path: &mut Vec<usize>, dl: &mut Deadline) -> OracleResult<Option<Vec<usize>>> {
    dl.tick()?;
    let s = path[0];
    let last = *path.last().expect("nonempty");
    let next: Vec<usize> = g.neighbors(last).iter().filter(|&w| w > s && !path.contains(&w)).collect();
    for w in next {
        // w may touch only `last` among the interior, plus possibly s
        let interior = path.get(1..path.len() - 1).unwrap_or(&[]);
        if interior.iter().any(|&x| g.adjacent(x, w)) {
            continue;
        }
        if path.len() >= 2 && g.adjacent(s, w) {
            // closes an induced cycle of length path.len() + 1
            let len = path.len() + 1;
            if len >= 5 && len % 2 == 1 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Ok(Some(cycle));
            }
            continue;
        }
        path.push(w);
        let found = grow_induced_path(g, path, dl)?;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Witness checks

pub fn is_clique(g: impl AsRef<SimpleGraph>, set: &VertexSet) -> bool {
    let g = g.as_ref();
    set.iter().all(|v| {
        let mut rest = set.clone();
        rest.remove(v);
        rest.is_subset(g.neighbors(v))
    })
}

pub fn is_independent(g: impl AsRef<SimpleGraph>, set: &VertexSet) -> bool {
    let g = g.as_ref();
    set.iter().all(|v| g.neighbors(v).is_disjoint(set))
}

pub fn is_dominating(g: impl AsRef<SimpleGraph>, set: &VertexSet) -> bool {
    let g = g.as_ref();
    let mut covered = set.clone();
    for v in set {
        covered.union_with(g.neighbors(v));
    }
    covered.count() == g.vertex_count()
}

/// Pairs are edges of `g` and pairwise vertex-disjoint.
pub fn is_matching(g: impl AsRef<SimpleGraph>, pairs: &[(usize, usize)]) -> bool {
    let g = g.as_ref();
    let mut seen = VertexSet::new(g.vertex_count());
    for &(u, v) in pairs {
        if u == v || !g.adjacent(u, v) || seen.contains(u) || seen.contains(v) {
            return false;
        }
        seen.insert(u);
        seen.insert(v);
    }
    true
}

pub fn is_vertex_cover(g: impl AsRef<SimpleGraph>, set: &VertexSet) -> bool {
    g.as_ref().edges().iter().all(|&(u, v)| set.contains(u) || set.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::graph::DivisorGraph;

    fn g(n: u64) -> DivisorGraph {
        DivisorGraph::build(&factorize(n).unwrap()).unwrap()
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    fn cycle(len: usize) -> SimpleGraph {
        SimpleGraph::from_edges(len, (0..len).map(|i| (i, (i + 1) % len)))
    }

    fn complete(len: usize) -> SimpleGraph {
        SimpleGraph::from_edges(len, (0..len).flat_map(|i| (i + 1..len).map(move |j| (i, j))))
    }

    /// Exhaustive subset enumeration; the slowest possible reference.
    fn subsets(len: usize) -> impl Iterator<Item = VertexSet> {
        (0u32..1 << len).map(move |m| VertexSet::from_indices(len, (0..len).filter(|i| m >> i & 1 == 1)))
    }

    #[test]
    fn examples() {
        let b = budget();
        assert_eq!(bf_max_clique(g(36), &b).unwrap(), 3);
        assert_eq!(bf_min_dominating(g(30), &b).unwrap(), 3);
        assert_eq!(bf_chromatic_index(g(32), &b).unwrap(), 3);
        assert_eq!(bf_diameter(g(12)).unwrap(), 3);
        let g12 = g(12);
        assert_eq!(g12.values_of(bf_cut_vertices(&g12)), [4, 6]);
        assert_eq!(bf_degree_sequence(g(32)), [1, 2, 2, 3]);
        assert_eq!(bf_automorphisms(g(30), &b).unwrap().len(), 6);
        assert!(bf_isomorphic(g(8), g(15), &b).unwrap());
        assert!(!bf_isomorphic(g(12), g(16), &b).unwrap());
        assert!(bf_is_perfect(g(60), &b).unwrap());
        assert!(bf_is_perfect(g(8), &b).unwrap());
    }

    #[test]
    fn imperfect_360_has_witness() {
        let g360 = g(360);
        let b = OracleBudget { perfect_cap: 30, ..budget() };
        let verdict = bf_perfect_verdict(&g360, &b).unwrap();
        assert!(!verdict.perfect);
        let hole = verdict.witness.unwrap();
        let h = if hole.in_complement { g360.structure().complement() } else { g360.structure().clone() };
        let c = &hole.cycle;
        assert!(c.len() >= 5 && c.len() % 2 == 1);
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let consecutive = j == i + 1 || (i == 0 && j == c.len() - 1);
                assert_eq!(h.adjacent(c[i], c[j]), consecutive);
            }
        }
    }

    #[test]
    fn classic_graphs() {
        let b = budget();
        let c5 = cycle(5);
        assert_eq!(bf_max_clique(&c5, &b).unwrap(), 2);
        assert_eq!(bf_chromatic(&c5, &b).unwrap(), 3);
        assert_eq!(bf_chromatic_index(&c5, &b).unwrap(), 3);
        assert_eq!(bf_independence(&c5, &b).unwrap(), 2);
        assert_eq!(bf_max_matching(&c5, &b).unwrap(), 2);
        assert_eq!(bf_min_edge_cover(&c5, &b).unwrap(), 3);
        assert_eq!(bf_min_vertex_cover(&c5, &b).unwrap(), 3);
        assert_eq!(bf_min_dominating(&c5, &b).unwrap(), 2);
        assert!(!bf_is_perfect(&c5, &b).unwrap());
        assert!(!bf_is_perfect(cycle(7).complement(), &b).unwrap());
        assert!(bf_is_perfect(cycle(6), &b).unwrap());
        assert_eq!(bf_automorphisms(&c5, &b).unwrap().len(), 10);

        let k4 = complete(4);
        assert_eq!(bf_chromatic_index(&k4, &b).unwrap(), 3);
        assert_eq!(bf_chromatic_index(complete(5), &b).unwrap(), 5);
        assert_eq!(bf_automorphisms(&k4, &b).unwrap().len(), 24);

        // Petersen graph: class 2
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = SimpleGraph::from_edges(10, outer.chain(spokes).chain(inner));
        assert_eq!(bf_chromatic_index(&petersen, &b).unwrap(), 4);
        assert_eq!(bf_chromatic(&petersen, &b).unwrap(), 3);
        assert_eq!(bf_automorphisms(&petersen, &b).unwrap().len(), 120);
        assert_eq!(bf_min_dominating(&petersen, &b).unwrap(), 3);
        assert_eq!(bf_independence(&petersen, &b).unwrap(), 4);
    }

    #[test]
    fn budget_caps() {
        let b = OracleBudget { chromatic_cap: 3, ..budget() };
        assert!(matches!(bf_chromatic(g(30), &b), Err(OracleError::OverBudget { cap: 3, .. })));
        assert!(matches!(bf_automorphisms(g(720), &budget()), Err(OracleError::OverBudget { .. })));
        let b = OracleBudget { max_vertices: 5, ..budget() };
        assert!(matches!(bf_max_clique(g(30), &b), Err(OracleError::OverBudget { cap: 5, .. })));
        let b = OracleBudget { timeout: Duration::ZERO, ..budget() };
        // large enough to hit the tick check
        let big = g(2 * 3 * 5 * 7 * 11);
        let big_b = OracleBudget { dominating_cap: 40, ..b };
        assert!(matches!(bf_min_dominating(&big, &big_b), Err(OracleError::Timeout { .. }) | Ok(_)));
    }

    #[test]
    fn agree_with_subset_enumeration() {
        let b = budget();
        for n in [12u64, 16, 24, 30, 32, 36, 48, 60, 64, 72, 90, 96, 100, 120, 144, 180, 210] {
            let d = g(n);
            let s = d.structure();
            let len = s.vertex_count();
            if len > 16 {
                continue;
            }
            let mut clique = 0;
            let mut indep = 0;
            let mut cover = len;
            let mut dom = len;
            for set in subsets(len) {
                let c = set.count();
                if is_clique(s, &set) {
                    clique = clique.max(c);
                }
                if is_independent(s, &set) {
                    indep = indep.max(c);
                }
                if is_vertex_cover(s, &set) {
                    cover = cover.min(c);
                }
                if is_dominating(s, &set) {
                    dom = dom.min(c);
                }
            }
            assert_eq!(bf_max_clique(s, &b).unwrap(), clique, "n={n}");
            assert_eq!(bf_independence(s, &b).unwrap(), indep, "n={n}");
            assert_eq!(bf_min_vertex_cover(s, &b).unwrap(), cover, "n={n}");
            assert_eq!(bf_min_dominating(s, &b).unwrap(), dom, "n={n}");
        }
    }

    #[test]
    fn oracle_self_consistency() {
        let b = budget();
        for n in 4..=400u64 {
            let f = factorize(n).unwrap();
            if f.exponents() == [1] || f.exponents() == [2] {
                continue;
            }
            let d = DivisorGraph::build(&f).unwrap();
            let len = d.vertex_count();
            let indep = max_independent_set(&d, &b).unwrap();
            let cover = min_vertex_cover(&d, &b).unwrap();
            assert!(is_independent(&d, &indep));
            assert!(is_vertex_cover(&d, &cover));
            assert_eq!(indep.count() + cover.count(), len, "n={n}");
            let m = max_matching(&d, &b).unwrap();
            assert!(is_matching(&d, &m));
            assert_eq!(m.len() + bf_min_edge_cover(&d, &b).unwrap(), len);
            let clique = max_clique(&d, &b).unwrap();
            assert!(is_clique(&d, &clique));
            if len <= 26 {
                let chi = bf_chromatic(&d, &b).unwrap();
                assert!(clique.count() <= chi);
                let delta = d.structure().max_degree();
                let chi1 = bf_chromatic_index(&d, &b).unwrap();
                assert!(delta <= chi1 && chi1 <= delta + 1, "n={n}");
                assert!(is_dominating(&d, &min_dominating_set(&d, &b).unwrap()));
            }
        }
    }

    #[test]
    fn edge_coloring_output_is_proper() {
        let b = budget();
        for n in [12u64, 36, 72, 100, 180] {
            let d = g(n);
            let (k, colors) = bf_edge_coloring(&d, &b).unwrap();
            let edges = d.structure().edges();
            for i in 0..edges.len() {
                assert!(colors[i] < k);
                for j in i + 1..edges.len() {
                    let (a, bb) = (edges[i], edges[j]);
                    let share = a.0 == bb.0 || a.0 == bb.1 || a.1 == bb.0 || a.1 == bb.1;
                    assert!(!(share && colors[i] == colors[j]));
                }
            }
        }
    }

    #[test]
    fn single_edge_faults_are_detected_on_30() {
        let b = budget();
        let d = g(30);
        let base = d.structure();
        let fingerprint = |s: &SimpleGraph| {
            (
                bf_max_clique(s, &b).ok(),
                bf_independence(s, &b).ok(),
                bf_max_matching(s, &b).ok(),
                bf_min_vertex_cover(s, &b).ok(),
                bf_min_edge_cover(s, &b).ok(),
                bf_min_dominating(s, &b).ok(),
                bf_chromatic_index(s, &b).ok(),
                bf_diameter(s).ok(),
                bf_cut_vertices(s),
                bf_degree_sequence(s),
            )
        };
        let clean = fingerprint(base);
        let witnesses_ok = |s: &SimpleGraph| {
            let f = factorize(30).unwrap();
            let clique = d.indices_of(&crate::formulas::clique_witness(&f).unwrap().vertices()).unwrap();
            let dom = d.indices_of(&crate::formulas::dominating_witness(&f).unwrap()).unwrap();
            let m: Vec<(usize, usize)> = crate::formulas::matching_witness(&f)
                .unwrap()
                .iter()
                .map(|&(x, y)| (d.index_of(x).unwrap(), d.index_of(y).unwrap()))
                .collect();
            is_clique(s, &clique) && is_dominating(s, &dom) && is_matching(s, &m)
        };
        assert!(witnesses_ok(base));
        for (u, v) in base.edges() {
            let mut faulty = base.clone();
            faulty.remove_edge(u, v);
            assert!(
                fingerprint(&faulty) != clean || !witnesses_ok(&faulty),
                "deleting {{{}, {}}} went unnoticed",
                d.value(u),
                d.value(v)
            );
        }
    }
}
