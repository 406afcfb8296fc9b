//! Differential verification of the closed forms against the oracles, and
//! range sweeps.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arith::{factorize, Factorization};
use crate::automorphism::{aut_structure, enumerate_automorphisms_with_cap, Automorphism, DEFAULT_ORDER_CAP};
use crate::coloring::{constructive_edge_coloring, validate_edge_coloring, validate_vertex_coloring, vertex_coloring};
use crate::error::{Error, Result};
use crate::formulas;
use crate::graph::{DivisorGraph, DEFAULT_VERTEX_CAP};
use crate::oracles::{self, OracleBudget, OracleError};
use crate::report::{ParameterReport, REPORT_COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    FormulaOnly,
    Verified,
    OracleSkipped,
    Mismatch,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::FormulaOnly => "formula-only",
            Status::Verified => "verified",
            Status::OracleSkipped => "oracle-skipped",
            Status::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Degrees,
    Pendants,
    DegreeTwo,
    Diameter,
    MaxDegreeVertices,
    Delta,
    CutVertices,
    CliqueNumber,
    ChromaticNumber,
    IndependenceNumber,
    MatchingNumber,
    VertexCoverNumber,
    EdgeCoverNumber,
    DominationNumber,
    ChromaticIndex,
    Perfect,
    Automorphisms,
    VertexColoring,
    EdgeColoring,
}

impl Check {
    pub const ALL: [Check; 19] = [
        Check::Degrees,
        Check::Pendants,
        Check::DegreeTwo,
        Check::Diameter,
        Check::MaxDegreeVertices,
        Check::Delta,
        Check::CutVertices,
        Check::CliqueNumber,
        Check::ChromaticNumber,
        Check::IndependenceNumber,
        Check::MatchingNumber,
        Check::VertexCoverNumber,
        Check::EdgeCoverNumber,
        Check::DominationNumber,
        Check::ChromaticIndex,
        Check::Perfect,
        Check::Automorphisms,
        Check::VertexColoring,
        Check::EdgeColoring,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Check::Degrees => "status_degrees",
            Check::Pendants => "status_pendants",
            Check::DegreeTwo => "status_degree_two",
            Check::Diameter => "status_diameter",
            Check::MaxDegreeVertices => "status_max_degree_vertices",
            Check::Delta => "status_delta",
            Check::CutVertices => "status_cut_vertices",
            Check::CliqueNumber => "status_clique_number",
            Check::ChromaticNumber => "status_chromatic_number",
            Check::IndependenceNumber => "status_independence_number",
            Check::MatchingNumber => "status_matching_number",
            Check::VertexCoverNumber => "status_vertex_cover_number",
            Check::EdgeCoverNumber => "status_edge_cover_number",
            Check::DominationNumber => "status_domination_number",
            Check::ChromaticIndex => "status_chromatic_index",
            Check::Perfect => "status_is_perfect",
            Check::Automorphisms => "status_automorphisms",
            Check::VertexColoring => "status_vertex_coloring",
            Check::EdgeColoring => "status_edge_coloring",
        }
    }
}

/// One report plus a status per check, in [`Check::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub report: ParameterReport,
    pub statuses: Vec<(Check, Status)>,
    /// Human-readable detail for every mismatch.
    pub mismatches: Vec<String>,
}

impl SweepRow {
    pub fn status(&self, check: Check) -> Status {
        self.statuses.iter().find(|(c, _)| *c == check).map(|&(_, s)| s).expect("every check present")
    }

    pub fn has_mismatch(&self) -> bool {
        self.statuses.iter().any(|&(_, s)| s == Status::Mismatch)
    }

    pub fn csv_record(&self) -> Vec<String> {
        let mut rec = self.report.csv_record();
        rec.extend(self.statuses.iter().map(|(_, s)| s.tag().to_string()));
        rec
    }
}

pub fn sweep_header() -> Vec<&'static str> {
    REPORT_COLUMNS.iter().copied().chain(Check::ALL.iter().map(|c| c.column())).collect()
}

/// Report only; every status is `formula-only`.
pub fn formula_row(f: &Factorization) -> Result<SweepRow> {
    let report = formulas::report(f)?;
    let statuses = Check::ALL.iter().map(|&c| (c, Status::FormulaOnly)).collect();
    Ok(SweepRow { report, statuses, mismatches: vec![] })
}

struct Recorder {
    statuses: Vec<(Check, Status)>,
    mismatches: Vec<String>,
}

impl Recorder {
    fn pass(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.statuses.push((check, Status::Verified));
        } else {
            self.statuses.push((check, Status::Mismatch));
            self.mismatches.push(format!("{}: {}", check.column(), detail()));
        }
    }

    /// Oracle over budget or out of time: skipped. Any other oracle error
    /// is a failure of the oracle itself and counts as a mismatch.
    fn oracle<T>(&mut self, check: Check, r: std::result::Result<T, OracleError>, compare: impl FnOnce(T) -> (bool, String)) {
        match r {
            Ok(v) => {
                let (ok, detail) = compare(v);
                self.pass(check, ok, || detail);
            }
            Err(OracleError::OverBudget { .. } | OracleError::Timeout { .. }) => {
                self.statuses.push((check, Status::OracleSkipped));
            }
            Err(e) => self.pass(check, false, || e.to_string()),
        }
    }

    fn skip(&mut self, check: Check) {
        self.statuses.push((check, Status::OracleSkipped));
    }
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn mismatch<T: std::fmt::Debug>(formula: T, oracle: T) -> String {
    format!("formula {formula:?}, oracle {oracle:?}")
}

/// Runs every check whose oracle fits in `budget`.
pub fn verify(f: &Factorization, budget: &OracleBudget) -> Result<SweepRow> {
    let report = formulas::report(f)?;
    let mut rec = Recorder { statuses: Vec::with_capacity(Check::ALL.len()), mismatches: vec![] };
    let g = match DivisorGraph::build_with_cap(f, DEFAULT_VERTEX_CAP.min(budget.max_vertices.max(1))) {
        Ok(g) => g,
        Err(Error::TooManyVertices { .. }) => {
            for &c in &Check::ALL {
                rec.skip(c);
            }
            return Ok(SweepRow { report, statuses: rec.statuses, mismatches: rec.mismatches });
        }
        Err(e) => return Err(e),
    };
    let s = g.structure();
    let len = g.vertex_count();
    let degree = |i: usize| s.degree(i) as u64;

    // degree-based checks read the explicit adjacency directly
    let mut bad_degrees = Vec::new();
    for (i, &v) in g.vertices().iter().enumerate() {
        let d = formulas::degree(f, v)?;
        if d != degree(i) {
            bad_degrees.push((v, d, degree(i)));
        }
    }
    rec.pass(Check::Degrees, bad_degrees.is_empty(), || format!("(vertex, formula, graph) {bad_degrees:?}"));

    let with_degree = |d: u64| sorted(g.values_of((0..len).filter(|&i| degree(i) == d)));
    let pendants = with_degree(1);
    rec.pass(Check::Pendants, sorted(report.pendant_vertices.clone()) == pendants && report.pendant_count == pendants.len(), || {
        mismatch(&report.pendant_vertices, &pendants)
    });
    let twos = with_degree(2);
    rec.pass(Check::DegreeTwo, sorted(report.degree_two_vertices.clone()) == twos, || {
        mismatch(&report.degree_two_vertices, &twos)
    });

    rec.oracle(Check::Diameter, oracles::bf_diameter(s), |d| {
        (report.diameter as usize == d, mismatch(report.diameter as usize, d))
    });

    let max_deg = s.max_degree() as u64;
    let tops = with_degree(max_deg);
    rec.pass(
        Check::MaxDegreeVertices,
        sorted(report.max_degree_vertices.clone()) == tops && report.max_degree_count == tops.len(),
        || mismatch(&report.max_degree_vertices, &tops),
    );
    rec.pass(Check::Delta, report.delta == max_deg, || mismatch(report.delta, max_deg));

    if len <= budget.max_vertices {
        let cuts = sorted(g.values_of(oracles::bf_cut_vertices(s)));
        rec.pass(Check::CutVertices, sorted(report.cut_vertices.clone()) == cuts, || {
            mismatch(&report.cut_vertices, &cuts)
        });
    } else {
        rec.skip(Check::CutVertices);
    }

    let clique = formulas::clique_witness(f)?.vertices();
    let clique_ok = oracles::is_clique(s, &g.indices_of(&clique)?) && clique.len() as u64 == report.clique_number;
    rec.oracle(Check::CliqueNumber, oracles::bf_max_clique(s, budget), |w| {
        (clique_ok && report.clique_number == w as u64, format!("{}; witness valid: {clique_ok}", mismatch(report.clique_number, w as u64)))
    });

    rec.oracle(Check::ChromaticNumber, oracles::bf_chromatic(s, budget), |x| {
        (report.chromatic_number == x as u64, mismatch(report.chromatic_number, x as u64))
    });

    let indep = formulas::independent_witness(f)?;
    let indep_ok = oracles::is_independent(s, &g.indices_of(&indep)?) && indep.len() as u64 == report.independence_number;
    rec.oracle(Check::IndependenceNumber, oracles::bf_independence(s, budget), |a| {
        (
            indep_ok && report.independence_number == a as u64,
            format!("{}; witness valid: {indep_ok}", mismatch(report.independence_number, a as u64)),
        )
    });

    let matching: Vec<(usize, usize)> = formulas::matching_witness(f)?
        .iter()
        .map(|&(u, v)| Ok((g.index_of(u)?, g.index_of(v)?)))
        .collect::<Result<_>>()?;
    let matching_ok = oracles::is_matching(s, &matching) && matching.len() as u64 == report.matching_number;
    let matching_size = oracles::bf_max_matching(s, budget);
    rec.oracle(Check::MatchingNumber, matching_size.clone(), |m| {
        (
            matching_ok && report.matching_number == m as u64,
            format!("{}; witness valid: {matching_ok}", mismatch(report.matching_number, m as u64)),
        )
    });

    rec.oracle(Check::VertexCoverNumber, oracles::bf_min_vertex_cover(s, budget), |b| {
        (report.vertex_cover_number == b as u64, mismatch(report.vertex_cover_number, b as u64))
    });
    rec.oracle(Check::EdgeCoverNumber, oracles::bf_min_edge_cover(s, budget), |b| {
        (report.edge_cover_number == b as u64, mismatch(report.edge_cover_number, b as u64))
    });

    let dom = formulas::dominating_witness(f)?;
    let dom_ok = oracles::is_dominating(s, &g.indices_of(&dom)?) && dom.len() as u64 == report.domination_number;
    rec.oracle(Check::DominationNumber, oracles::bf_min_dominating(s, budget), |y| {
        (
            dom_ok && report.domination_number == y as u64,
            format!("{}; witness valid: {dom_ok}", mismatch(report.domination_number, y as u64)),
        )
    });

    let edge_search = oracles::bf_edge_coloring(s, budget);
    rec.oracle(Check::ChromaticIndex, edge_search.clone().map(|(k, _)| k), |k| {
        (report.chromatic_index == k as u64, mismatch(report.chromatic_index, k as u64))
    });

    rec.oracle(Check::Perfect, oracles::bf_perfect_verdict(s, budget), |v| {
        (report.is_perfect == v.perfect, format!("{}; witness {:?}", mismatch(report.is_perfect, v.perfect), v.witness))
    });

    check_automorphisms(f, &g, budget, &mut rec)?;

    if len <= budget.clique_cap.min(budget.max_vertices) {
        let c = vertex_coloring(f)?;
        let ok = validate_vertex_coloring(&g, &c)? && c.color_count as u64 == report.clique_number;
        rec.pass(Check::VertexColoring, ok, || format!("{} colors, proper: {ok}", c.color_count));
    } else {
        rec.skip(Check::VertexColoring);
    }

    match constructive_edge_coloring(f) {
        Some(c) => {
            let c = c?;
            let ok = validate_edge_coloring(&g, &c)? && c.color_count as u64 == report.delta;
            rec.pass(Check::EdgeColoring, ok, || format!("{} colors, Δ = {}", c.color_count, report.delta));
        }
        None => rec.oracle(Check::EdgeColoring, edge_search, |(k, _)| {
            (k as u64 == report.delta, format!("search needs {k} colors, Δ = {}", report.delta))
        }),
    }

    Ok(SweepRow { report, statuses: rec.statuses, mismatches: rec.mismatches })
}

/// Enumerated group: right size, every element an automorphism of the
/// explicit graph, and equal as a set to the brute-force group when the
/// graph is small enough.
fn check_automorphisms(f: &Factorization, g: &DivisorGraph, budget: &OracleBudget, rec: &mut Recorder) -> Result<()> {
    let group = aut_structure(f)?;
    let elements = match enumerate_automorphisms_with_cap(f, g, DEFAULT_ORDER_CAP) {
        Ok(e) => e,
        Err(Error::GroupTooLarge { .. }) => {
            rec.skip(Check::Automorphisms);
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let distinct: BTreeSet<&Automorphism> = elements.iter().collect();
    let sound = elements.len() as u64 == group.order
        && distinct.len() == elements.len()
        && elements.iter().all(|a| a.is_automorphism_of(g));
    match oracles::bf_automorphisms(g, budget) {
        Ok(all) => {
            let brute: BTreeSet<Vec<usize>> = all.into_iter().collect();
            let ours: BTreeSet<Vec<usize>> = elements.iter().map(|a| a.images.clone()).collect();
            let same = brute == ours;
            rec.pass(Check::Automorphisms, sound && same, || {
                format!("order {} enumerated {}, brute force {}", group.order, ours.len(), brute.len())
            });
        }
        Err(OracleError::OverBudget { .. } | OracleError::Timeout { .. }) => {
            rec.pass(Check::Automorphisms, sound, || {
                format!("order {} but enumerated {} (or an element is not an automorphism)", group.order, elements.len())
            });
        }
        Err(e) => rec.pass(Check::Automorphisms, false, || e.to_string()),
    }
    Ok(())
}

/// Why an `n` in a sweep range produced no row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Skip {
    Prime,
    PrimeSquare,
    Unfactorable(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: usize,
    pub skipped_primes: usize,
    pub skipped_prime_squares: usize,
    pub unfactorable: usize,
    pub verified_checks: usize,
    pub skipped_checks: usize,
    pub mismatch_rows: usize,
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "rows={} skipped_primes={} skipped_prime_squares={} unfactorable={} verified_checks={} oracle_skipped_checks={} mismatches={}",
            self.rows,
            self.skipped_primes,
            self.skipped_prime_squares,
            self.unfactorable,
            self.verified_checks,
            self.skipped_checks,
            self.mismatch_rows
        )
    }
}

pub struct Sweep {
    /// One entry per `n` in the range, ascending.
    pub outcomes: Vec<(u64, std::result::Result<SweepRow, Skip>)>,
    pub summary: SweepSummary,
}

impl Sweep {
    pub fn rows(&self) -> impl Iterator<Item = &SweepRow> {
        self.outcomes.iter().filter_map(|(_, o)| o.as_ref().ok())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(sweep_header()).expect("in-memory write");
        for row in self.rows() {
            w.write_record(row.csv_record()).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn sweep_one(n: u64, check: bool, budget: &OracleBudget) -> std::result::Result<SweepRow, Skip> {
    let f = factorize(n).map_err(|e| Skip::Unfactorable(e.to_string()))?;
    match f.exponents().as_slice() {
        [1] => return Err(Skip::Prime),
        [2] => return Err(Skip::PrimeSquare),
        _ => {}
    }
    let row = if check { verify(&f, budget) } else { formula_row(&f) };
    row.map_err(|e| Skip::Unfactorable(e.to_string()))
}

/// Every `n` in `lo..=hi`, in parallel, collected in ascending order.
pub fn sweep(lo: u64, hi: u64, check: bool, budget: &OracleBudget) -> Result<Sweep> {
    if lo < 4 {
        return Err(Error::TooSmall(lo));
    }
    let outcomes: Vec<_> = (lo..=hi).into_par_iter().map(|n| (n, sweep_one(n, check, budget))).collect();
    let mut summary = SweepSummary::default();
    for (_, o) in &outcomes {
        match o {
            Ok(row) => {
                summary.rows += 1;
                summary.mismatch_rows += row.has_mismatch() as usize;
                for &(_, s) in &row.statuses {
                    match s {
                        Status::Verified => summary.verified_checks += 1,
                        Status::OracleSkipped => summary.skipped_checks += 1,
                        _ => {}
                    }
                }
            }
            Err(Skip::Prime) => summary.skipped_primes += 1,
            Err(Skip::PrimeSquare) => summary.skipped_prime_squares += 1,
            Err(Skip::Unfactorable(_)) => summary.unfactorable += 1,
        }
    }
    Ok(Sweep { outcomes, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_shape() {
        let h = sweep_header();
        assert_eq!(h.len(), REPORT_COLUMNS.len() + Check::ALL.len());
        assert_eq!(h[21], "status_degrees");
        assert_eq!(*h.last().unwrap(), "status_edge_coloring");
    }

    #[test]
    fn small_rows_verify() {
        let b = OracleBudget::default();
        for n in [8u64, 12, 30, 36, 60, 360] {
            let row = verify(&factorize(n).unwrap(), &b).unwrap();
            assert!(!row.has_mismatch(), "n={n}: {:?}", row.mismatches);
            assert_eq!(row.statuses.len(), Check::ALL.len());
        }
        let row = verify(&factorize(8).unwrap(), &b).unwrap();
        assert!(row.statuses.iter().all(|&(_, s)| s == Status::Verified));
    }

    #[test]
    fn large_graphs_skip_expensive_checks() {
        let row = verify(&factorize(2 * 3 * 5 * 7 * 11).unwrap(), &OracleBudget::default()).unwrap();
        assert!(!row.has_mismatch());
        assert_eq!(row.status(Check::Degrees), Status::Verified);
        assert_eq!(row.status(Check::ChromaticNumber), Status::OracleSkipped);
        assert_eq!(row.status(Check::EdgeColoring), Status::Verified);
    }

    #[test]
    fn sweep_counts() {
        let b = OracleBudget::default();
        let s = sweep(4, 4, false, &b).unwrap();
        assert_eq!(s.summary.rows, 0);
        assert_eq!(s.summary.skipped_prime_squares, 1);
        let s = sweep(4, 20, false, &b).unwrap();
        // 6 8 10 12 14 15 16 18 20
        assert_eq!(s.summary.rows, 9);
        assert_eq!(s.summary.skipped_primes, 6);
        assert_eq!(s.summary.skipped_prime_squares, 2);
        let ns: Vec<u64> = s.rows().map(|r| r.report.n).collect();
        assert_eq!(ns, [6, 8, 10, 12, 14, 15, 16, 18, 20]);
        assert!(s.to_csv().lines().nth(1).unwrap().ends_with("formula-only"));
        assert!(sweep(3, 10, false, &b).is_err());
    }

    #[test]
    fn sweep_8_verified() {
        let s = sweep(8, 8, true, &OracleBudget::default()).unwrap();
        assert_eq!(s.summary.rows, 1);
        assert_eq!(s.summary.mismatch_rows, 0);
        assert_eq!(s.summary.skipped_checks, 0);
    }
}
