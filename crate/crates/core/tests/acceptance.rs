//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p divgraph-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;

use divgraph_core::automorphism::{aut_structure, enumerate_automorphisms};
use divgraph_core::coloring::{
    edge_coloring_prime_power, edge_coloring_squarefree, validate_edge_coloring, validate_vertex_coloring,
    vertex_coloring, EdgeKind,
};
use divgraph_core::formulas;
use divgraph_core::oracles::{self, OracleBudget};
use divgraph_core::verify::{sweep, Check, Status};
use divgraph_core::{factorize, DivisorGraph, Factorization};

type Outcome = Result<String, String>;

const SWEEP_HI: u64 = 2000;

fn admissible(n: u64) -> Option<Factorization> {
    let f = factorize(n).ok()?;
    formulas::check_standing(&f).ok()?;
    Some(f)
}

fn swept() -> impl Iterator<Item = Factorization> {
    (4..=SWEEP_HI).filter_map(admissible)
}

fn build(f: &Factorization) -> DivisorGraph {
    DivisorGraph::build(f).expect("graph builds")
}

fn primes_below(limit: u64) -> Vec<u64> {
    (2..limit).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Exponent signatures (descending) with `∏(α_i + 1) ≤ bound`, excluding
/// primes and prime squares.
fn signatures(bound: u64) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, product: u64, bound: u64, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() && !matches!(prefix.as_slice(), [1] | [2]) {
            out.push(prefix.clone());
        }
        let cap = prefix.last().copied().unwrap_or(u32::MAX);
        let mut a = 1;
        while a <= cap && product * u64::from(a + 1) <= bound {
            prefix.push(a);
            extend(prefix, product * u64::from(a + 1), bound, out);
            prefix.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, bound, &mut out);
    out
}

/// Up to two representatives per signature: smallest primes, and primes
/// near 100 when the product stays below 10^12.
fn representatives(sig: &[u32]) -> Vec<Factorization> {
    [[2u64, 3, 5, 7, 11], [97, 89, 101, 83, 103]]
        .iter()
        .filter_map(|ps| {
            let n = sig.iter().zip(ps).try_fold(1u64, |acc, (&a, &p)| acc.checked_mul(p.checked_pow(a)?))?;
            (n <= 1_000_000_000_000).then(|| factorize(n).unwrap())
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let b = OracleBudget::default();
    let s = sweep(4, SWEEP_HI, true, &b).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for row in s.rows().filter(|r| r.has_mismatch()) {
        bad.push(format!("n={}: {}", row.report.n, row.mismatches.join("; ")));
    }
    // the cheap checks never skip in this range
    let always = [Check::Degrees, Check::Pendants, Check::Diameter, Check::CutVertices, Check::Delta, Check::CliqueNumber];
    for row in s.rows() {
        for c in always {
            if row.status(c) != Status::Verified {
                bad.push(format!("n={}: {} not verified", row.report.n, c.column()));
            }
        }
    }
    let prime_powers = s.rows().filter(|r| factorize(r.report.n).unwrap().is_prime_power()).count();
    if bad.is_empty() {
        Ok(format!(
            "{} admissible n in [4, {SWEEP_HI}] ({prime_powers} prime powers), {} checks verified, {} over budget, 0 mismatches",
            s.summary.rows, s.summary.verified_checks, s.summary.skipped_checks
        ))
    } else {
        Err(bad.into_iter().take(10).join(" | "))
    }
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for f in swept() {
        let g = build(&f);
        let s = g.structure();
        let n = f.n();
        let clique = formulas::clique_witness(&f).unwrap().vertices();
        if !oracles::is_clique(s, &g.indices_of(&clique).unwrap())
            || clique.len() as u64 != formulas::clique_number(&f).unwrap()
        {
            return Err(format!("clique witness for {n}"));
        }
        let m: Vec<(usize, usize)> = formulas::matching_witness(&f)
            .unwrap()
            .iter()
            .map(|&(u, v)| (g.index_of(u).unwrap(), g.index_of(v).unwrap()))
            .collect();
        let uncovered = g.vertex_count() - 2 * m.len();
        let expected_uncovered = usize::from(f.is_perfect_square());
        if !oracles::is_matching(s, &m)
            || m.len() as u64 != formulas::matching_number(&f).unwrap()
            || uncovered != expected_uncovered
        {
            return Err(format!("matching witness for {n}"));
        }
        let indep = formulas::independent_witness(&f).unwrap();
        if !oracles::is_independent(s, &g.indices_of(&indep).unwrap())
            || indep.len() as u64 != formulas::independence_number(&f).unwrap()
        {
            return Err(format!("independent witness for {n}"));
        }
        let dom = formulas::dominating_witness(&f).unwrap();
        if !oracles::is_dominating(s, &g.indices_of(&dom).unwrap())
            || dom.len() as u64 != formulas::domination_number(&f).unwrap()
        {
            return Err(format!("dominating witness for {n}"));
        }
        count += 1;
    }
    Ok(format!("clique, matching, independent and dominating witnesses valid for {count} n"))
}

fn criterion_3() -> Outcome {
    let mut prime_powers = 0;
    for p in primes_below(101) {
        let mut q = p * p * p;
        let mut alpha = 3;
        while q <= 1_000_000 {
            let f = factorize(q).unwrap();
            let c = edge_coloring_prime_power(&f).map_err(|e| e.to_string())?;
            if !validate_edge_coloring(&build(&f), &c).unwrap() || c.color_count != (alpha - 2) as usize {
                return Err(format!("{p}^{alpha}"));
            }
            prime_powers += 1;
            q *= p;
            alpha += 1;
        }
    }
    let mut squarefree = 0;
    let ps = primes_below(50);
    for k in 2..=5usize {
        for combo in ps.iter().combinations(k) {
            let f = factorize(combo.iter().copied().product()).unwrap();
            let c = edge_coloring_squarefree(&f).map_err(|e| format!("{}: {e}", f.n()))?;
            if !validate_edge_coloring(&build(&f), &c).unwrap() || c.color_count != (1 << (k - 1)) - 1 {
                return Err(format!("squarefree {}", f.n()));
            }
            squarefree += 1;
        }
    }
    let c = edge_coloring_squarefree(&factorize(30).unwrap()).unwrap();
    let table: Vec<((u64, u64), u64, EdgeKind)> =
        c.color_of.keys().map(|&e| (e, c.label_of(e).unwrap(), c.edge_type[&e])).collect();
    let expected = vec![
        ((2, 15), 2, EdgeKind::TypeIII),
        ((3, 10), 3, EdgeKind::TypeIII),
        ((5, 6), 5, EdgeKind::TypeIII),
        ((6, 10), 2, EdgeKind::TypeI),
        ((6, 15), 3, EdgeKind::TypeI),
        ((10, 15), 5, EdgeKind::TypeI),
    ];
    if table != expected {
        return Err(format!("table for 30: {table:?}"));
    }
    Ok(format!("{prime_powers} prime powers up to 10^6 and {squarefree} squarefree n proper with Δ colors; table for 30 exact"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for f in (4..=20_000).filter_map(admissible) {
        if f.proper_divisor_count() > 200 {
            continue;
        }
        let c = vertex_coloring(&f).unwrap();
        if !validate_vertex_coloring(&build(&f), &c).unwrap()
            || c.color_count as u64 != formulas::clique_number(&f).unwrap()
        {
            return Err(format!("n={}", f.n()));
        }
        count += 1;
    }
    Ok(format!("proper with exactly ω colors for {count} n in [4, 20000]"))
}

fn criterion_5() -> Outcome {
    let b = OracleBudget::default();
    let mut against_brute = 0;
    let mut small: Vec<Factorization> = swept().filter(|f| f.proper_divisor_count() <= 10).collect();
    for sig in signatures(12) {
        small.extend(representatives(&sig));
    }
    for f in &small {
        let g = build(f);
        let ours: BTreeSet<Vec<usize>> =
            enumerate_automorphisms(f, &g).unwrap().into_iter().map(|a| a.images).collect();
        let brute: BTreeSet<Vec<usize>> = oracles::bf_automorphisms(&g, &b).unwrap().into_iter().collect();
        if ours != brute {
            return Err(format!("n={}: {} enumerated vs {} brute force", f.n(), ours.len(), brute.len()));
        }
        against_brute += 1;
    }
    let mut counted = 0;
    for f in swept() {
        let g = build(&f);
        let expected: u64 = if f.k() == 1 || f.exponents() == [2, 1] {
            2
        } else {
            f.exponents().iter().dedup_with_count().map(|(c, _)| (1..=c as u64).product::<u64>()).product()
        };
        let all = enumerate_automorphisms(&f, &g).unwrap();
        if all.len() as u64 != expected || aut_structure(&f).unwrap().order != expected {
            return Err(format!("n={}: {} elements, expected {expected}", f.n(), all.len()));
        }
        counted += 1;
    }
    Ok(format!(
        "set equality with brute force for {against_brute} graphs with π ≤ 10 (all signatures); group order for {counted} n"
    ))
}

fn criterion_6() -> Outcome {
    let b = OracleBudget::default();
    let pool: Vec<(Factorization, DivisorGraph)> = (4..=300)
        .filter_map(admissible)
        .filter(|f| f.proper_divisor_count() <= 10)
        .map(|f| {
            let g = build(&f);
            (f, g)
        })
        .collect();
    let mut pairs = 0;
    let mut isomorphic = 0;
    for (i, (fm, gm)) in pool.iter().enumerate() {
        for (fn_, gn) in &pool[i + 1..] {
            let formula = formulas::isomorphic(fm, fn_).unwrap();
            let brute = oracles::bf_isomorphic(gm, gn, &b).unwrap();
            if formula != brute {
                return Err(format!("({}, {}): formula {formula}, brute force {brute}", fm.n(), fn_.n()));
            }
            pairs += 1;
            isomorphic += usize::from(formula);
        }
    }
    for (m, n, expected) in [(8, 15, true), (8, 27, true), (8, 6, true), (8, 16, false)] {
        let got = formulas::isomorphic(&factorize(m).unwrap(), &factorize(n).unwrap()).unwrap();
        if got != expected {
            return Err(format!("({m}, {n}) gave {got}"));
        }
    }
    Ok(format!("{pairs} pairs in [4, 300] agree ({isomorphic} isomorphic); exceptional pairs as expected"))
}

fn criterion_7() -> Outcome {
    let b = OracleBudget::default();
    let mut graphs: Vec<Factorization> = swept().filter(|f| f.proper_divisor_count() <= 14).collect();
    let sigs = signatures(16);
    for sig in &sigs {
        graphs.extend(representatives(sig));
    }
    for f in &graphs {
        let formula = formulas::is_perfect(f).unwrap();
        let brute = oracles::bf_is_perfect(build(f), &b).unwrap();
        let shape = matches!(f.exponents().as_slice(), [_] | [_, _] | [_, 1, 1] | [1, 1, 1, 1]);
        if formula != brute || shape != brute {
            return Err(format!("n={}: formula {formula}, brute force {brute}, shape {shape}", f.n()));
        }
    }
    Ok(format!("{} graphs with π ≤ 14 ({} signatures) agree, zero exceptions to the shape list", graphs.len(), sigs.len()))
}

fn criterion_8() -> Outcome {
    let b = OracleBudget::default();
    let g = |n: u64| build(&factorize(n).unwrap());
    let k2 = divgraph_core::SimpleGraph::from_edges(2, [(0, 1)]);
    for n in [8, 6] {
        if !oracles::bf_isomorphic(g(n), &k2, &b).unwrap() {
            return Err(format!("Υ_{n} is not K2"));
        }
    }
    let p4 = divgraph_core::SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
    let g12 = g(12);
    if !oracles::bf_isomorphic(&g12, &p4, &b).unwrap()
        || enumerate_automorphisms(&factorize(12).unwrap(), &g12).unwrap().len() != 2
        || oracles::bf_automorphisms(&g12, &b).unwrap().len() != 2
    {
        return Err("Υ_12 is not P4 with two automorphisms".into());
    }
    for f in (4..=500).filter_map(admissible) {
        let table = match f.exponents().as_slice() {
            [3] | [1, 1] => 1,
            [_] => 2,
            _ => 3,
        };
        let d = formulas::diameter(&f).unwrap() as usize;
        if d != table || oracles::bf_diameter(build(&f)).unwrap() != table {
            return Err(format!("diameter of {}", f.n()));
        }
        let pendants = match f.exponents().as_slice() {
            [3] | [4] => 2,
            [_] => 1,
            _ => f.k(),
        };
        let observed = (0..f.proper_divisor_count() as usize).filter(|&i| build(&f).structure().degree(i) == 1).count();
        if formulas::pendant_count(&f).unwrap() != pendants || observed != pendants {
            return Err(format!("pendant count of {}", f.n()));
        }
    }
    let v2: [(u64, &[u64]); 7] =
        [(8, &[]), (16, &[8]), (32, &[4, 8]), (64, &[4, 8]), (6, &[]), (12, &[4, 6]), (36, &[4, 6, 9])];
    for (n, expected) in v2 {
        let mut got = formulas::degree_two_vertices(&factorize(n).unwrap()).unwrap();
        got.sort_unstable();
        if got != expected {
            return Err(format!("V2({n}) = {got:?}"));
        }
    }
    Ok("Υ8 ≅ Υ6 ≅ K2; Υ12 = P4 with |Aut| = 2; diameters and pendant counts for n ≤ 500; V2 tables".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("formula-oracle agreement", criterion_1),
        ("witness validity", criterion_2),
        ("edge colorings", criterion_3),
        ("vertex coloring", criterion_4),
        ("automorphisms", criterion_5),
        ("isomorphism", criterion_6),
        ("perfectness", criterion_7),
        ("golden facts", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
