use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use divgraph_core::automorphism::{aut_structure, generators, DEFAULT_JSON_ELEMENT_CAP};
use divgraph_core::coloring::{constructive_edge_coloring, search_edge_coloring, vertex_coloring};
use divgraph_core::formulas::{self, report};
use divgraph_core::verify::sweep;
use divgraph_core::{factorize, DivisorGraph, Error, Factorization, OracleBudget, OracleError, SpecialCase};

#[derive(Parser)]
#[command(name = "divgraph", version, about = "Proper divisor graph analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every closed-form parameter for one n
    Analyze {
        n: u64,
        #[command(flatten)]
        format: ReportFormat,
    },
    /// One report row per admissible n in [lo, hi]
    Sweep {
        lo: u64,
        hi: u64,
        /// Check every parameter against the brute-force oracles
        #[arg(long)]
        verify: bool,
        /// Write the CSV here and the summary to stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Optimal vertex or edge coloring
    Color {
        n: u64,
        #[command(flatten)]
        target: ColorTarget,
        #[arg(long)]
        json: bool,
    },
    /// Automorphism group
    Aut {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Whether the graphs of m and n are isomorphic
    Iso { m: u64, n: u64 },
    /// The explicit graph
    Export {
        n: u64,
        #[command(flatten)]
        format: ExportFormat,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct ReportFormat {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
#[group(multiple = false)]
struct ColorTarget {
    #[arg(long)]
    edges: bool,
    #[arg(long)]
    vertices: bool,
}

#[derive(Args)]
#[group(multiple = false)]
struct ExportFormat {
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    json: bool,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Mismatch(String),
    Invalid(String),
    Unsupported(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Invalid(m) | Failure::Unsupported(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::FactorizationLimit { .. } => Failure::Unsupported(m),
            Error::TooManyVertices { .. } | Error::GroupTooLarge { .. } => Failure::Budget(m),
            Error::NoFreeColor { .. } => Failure::Mismatch(m),
            _ => Failure::Invalid(m),
        }
    }
}

type CmdResult = Result<String, Failure>;

const ENV_PREFIX: &str = "DIVGRAPH_";

/// Budget defaults, overridden by `DIVGRAPH_*` environment variables.
fn budget_from(lookup: impl Fn(&str) -> Option<String>) -> Result<OracleBudget, Failure> {
    let mut b = OracleBudget::default();
    let fields: [(&str, &mut usize); 8] = [
        ("MAX_VERTICES", &mut b.max_vertices),
        ("MAX_EDGES", &mut b.max_edges),
        ("CLIQUE_CAP", &mut b.clique_cap),
        ("CHROMATIC_CAP", &mut b.chromatic_cap),
        ("CHROMATIC_INDEX_CAP", &mut b.chromatic_index_cap),
        ("DOMINATING_CAP", &mut b.dominating_cap),
        ("AUTOMORPHISM_CAP", &mut b.automorphism_cap),
        ("PERFECT_CAP", &mut b.perfect_cap),
    ];
    let parse = |name: &str, raw: String| {
        raw.trim()
            .parse::<u64>()
            .map_err(|_| Failure::Invalid(format!("{ENV_PREFIX}{name}: expected a non-negative integer, got {raw:?}")))
    };
    for (name, slot) in fields {
        if let Some(raw) = lookup(name) {
            *slot = parse(name, raw)? as usize;
        }
    }
    if let Some(raw) = lookup("TIMEOUT_SECS") {
        b.timeout = Duration::from_secs(parse("TIMEOUT_SECS", raw)?);
    }
    Ok(b)
}

fn parse_n(n: u64) -> Result<Factorization, Failure> {
    Ok(factorize(n)?)
}

fn analyze(n: u64, format: &ReportFormat) -> CmdResult {
    let r = report(&parse_n(n)?)?;
    if format.json {
        Ok(r.to_json_pretty() + "\n")
    } else if format.csv {
        Ok(r.to_csv())
    } else {
        let cols = divgraph_core::report::REPORT_COLUMNS;
        let width = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (name, value) in cols.iter().zip(r.csv_record()) {
            writeln!(out, "{name:width$}  {}", if value.is_empty() { "-".into() } else { value }).unwrap();
        }
        Ok(out)
    }
}

fn run_sweep(lo: u64, hi: u64, verify: bool, out: Option<&PathBuf>, budget: &OracleBudget) -> CmdResult {
    if lo < 4 || lo > hi {
        return Err(Failure::Invalid(format!("sweep range must satisfy 4 <= lo <= hi, got [{lo}, {hi}]")));
    }
    let s = sweep(lo, hi, verify, budget)?;
    for row in s.rows().filter(|r| r.has_mismatch()) {
        for m in &row.mismatches {
            eprintln!("n={}: {m}", row.report.n);
        }
    }
    let summary = format!("sweep [{lo}, {hi}]: {}", s.summary);
    let csv = s.to_csv();
    let stdout = match out {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            summary + "\n"
        }
        None => {
            eprintln!("{summary}");
            csv
        }
    };
    if s.summary.mismatch_rows > 0 {
        print!("{stdout}");
        return Err(Failure::Mismatch(format!("{} rows with a MISMATCH", s.summary.mismatch_rows)));
    }
    Ok(stdout)
}

fn color(n: u64, edges: bool, json: bool, budget: &OracleBudget) -> CmdResult {
    let f = parse_n(n)?;
    if !edges {
        let c = vertex_coloring(&f)?;
        if json {
            return Ok(serde_json::to_string(&c).expect("serializes") + "\n");
        }
        let mut out = format!("colors: {}\n", c.color_count);
        for (v, col) in &c.color_of {
            writeln!(out, "{v} {col}").unwrap();
        }
        return Ok(out);
    }
    let c = match constructive_edge_coloring(&f) {
        Some(c) => c?,
        None => {
            formulas::check_standing(&f)?;
            let g = DivisorGraph::build(&f)?;
            search_edge_coloring(&g, budget).map_err(|e| match e {
                OracleError::OverBudget { .. } | OracleError::Timeout { .. } => {
                    Failure::Unsupported(format!("no constructive algorithm (open problem); search {e}"))
                }
                e => Failure::Mismatch(e.to_string()),
            })?
        }
    };
    if json {
        return Ok(serde_json::to_string(&c).expect("serializes") + "\n");
    }
    let mut out = format!("colors: {}\n", c.color_count);
    for (&(u, v), &col) in &c.color_of {
        let kind = c.edge_type[&(u, v)].tag();
        writeln!(out, "{u} {v} {col} {kind} c_{}", c.index_set[col]).unwrap();
    }
    Ok(out)
}

fn aut(n: u64, json: bool) -> CmdResult {
    let f = parse_n(n)?;
    let group = aut_structure(&f)?;
    let g = DivisorGraph::build(&f)?;
    if json {
        let j = group.to_json(&f, &g, DEFAULT_JSON_ELEMENT_CAP)?;
        return Ok(serde_json::to_string(&j).expect("serializes") + "\n");
    }
    let structure = match group.special_case {
        SpecialCase::Generic => group.structure.iter().map(|k| format!("S{k}")).collect::<Vec<_>>().join(" x "),
        SpecialCase::PrimePowerSwap => "Z2 (prime power swap)".into(),
        SpecialCase::PathReversal => "Z2 (path reversal)".into(),
    };
    let mut out = format!("order: {}\nstructure: {structure}\n", group.order);
    for gen in generators(&f, &g)? {
        let moved: Vec<String> =
            gen.value_pairs(&g).into_iter().filter(|(v, w)| v != w).map(|(v, w)| format!("{v}->{w}")).collect();
        writeln!(out, "generator: {}", moved.join(" ")).unwrap();
    }
    Ok(out)
}

fn iso(m: u64, n: u64) -> CmdResult {
    let (fm, fn_) = (parse_n(m)?, parse_n(n)?);
    let verdict = if !formulas::isomorphic(&fm, &fn_)? {
        "not isomorphic"
    } else if fm.similar(&fn_) {
        "isomorphic (similar)"
    } else {
        "isomorphic (exceptional pair)"
    };
    Ok(format!("{verdict}\n"))
}

fn export(n: u64, json: bool) -> CmdResult {
    let g = DivisorGraph::build(&parse_n(n)?)?;
    if json {
        Ok(serde_json::to_string(&g.to_json()).expect("serializes") + "\n")
    } else {
        Ok(g.to_dot())
    }
}

fn run(cli: Cli) -> CmdResult {
    let budget = budget_from(|name| std::env::var(format!("{ENV_PREFIX}{name}")).ok())?;
    match cli.command {
        Command::Analyze { n, format } => analyze(n, &format),
        Command::Sweep { lo, hi, verify, out } => run_sweep(lo, hi, verify, out.as_ref(), &budget),
        Command::Color { n, target, json } => color(n, target.edges, json, &budget),
        Command::Aut { n, json } => aut(n, json),
        Command::Iso { m, n } => iso(m, n),
        Command::Export { n, format } => export(n, format.json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("divgraph: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
