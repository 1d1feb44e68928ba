use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use rainbowlab::census::{self, CensusOptions};
use rainbowlab::coloring::{build_lower_bound_coloring, has_rainbow_packing, RainbowWitness};
use rainbowlab::formulas::{ar_formula, moon_ex, turan_edges, ArFormula};
use rainbowlab::graph::{self, Graph};
use rainbowlab::packing::{max_independent_triangles_with_budget, max_matching};
use rainbowlab::search::{ar_exact, SearchOptions};
use rainbowlab::{graph6, EdgeColoring};

use crate::{CliError, Exit};

/// A command's JSON payload and the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub exit: Exit,
}

impl Outcome {
    fn new(result: impl Serialize, exit: Exit) -> Self {
        Outcome {
            result: serde_json::to_value(result).expect("results serialize"),
            exit,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FormulasReport {
    pub n: u64,
    pub t: u64,
    /// `t_2(n - t)`
    pub turan_bipartite: u64,
    pub moon_ex: u64,
    pub ar_formula: u64,
    pub in_proven_range: bool,
}

pub fn cmd_formulas(n: u64, t: u64) -> Result<FormulasReport, CliError> {
    if t > n {
        return Err(CliError::Usage(format!(
            "need 0 <= t <= n, got n={n}, t={t}"
        )));
    }
    let ArFormula {
        value,
        in_proven_range,
    } = ar_formula(n, t)?;
    Ok(FormulasReport {
        n,
        t,
        turan_bipartite: turan_edges(n - t, 2)?,
        moon_ex: moon_ex(n, t)?,
        ar_formula: value,
        in_proven_range,
    })
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub n: usize,
    pub t: usize,
    pub colors: usize,
    pub expected_colors: u64,
    /// Size of the rainbow packing the coloring must avoid.
    pub k: usize,
    pub rainbow_packing: &'static str,
    pub witness: Option<RainbowWitness>,
    pub out: Option<PathBuf>,
}

impl ConstructReport {
    /// Whether the self-check agrees with the construction's guarantee.
    pub fn self_check_passed(&self) -> bool {
        self.witness.is_none() && self.colors as u64 == self.expected_colors
    }
}

pub fn cmd_construct(
    n: usize,
    t: usize,
    out: Option<&Path>,
) -> Result<(EdgeColoring, ConstructReport), CliError> {
    let coloring = build_lower_bound_coloring(n, t)?;
    if let Some(path) = out {
        fs::write(path, coloring.to_text())?;
    }
    let witness = has_rainbow_packing(&coloring, t + 2);
    let report = ConstructReport {
        n,
        t,
        colors: coloring.num_colors(),
        expected_colors: moon_ex(n as u64, t as u64)? + 1,
        k: t + 2,
        rainbow_packing: if witness.is_some() {
            "present"
        } else {
            "absent"
        },
        witness,
        out: out.map(Path::to_path_buf),
    };
    Ok((coloring, report))
}

#[derive(Debug, Serialize)]
pub struct CheckRainbowReport {
    pub n: usize,
    pub colors: usize,
    pub k: usize,
    pub rainbow_packing: &'static str,
    pub witness: Option<RainbowWitness>,
}

pub fn cmd_check_rainbow(coloring_path: &Path, k: usize) -> Result<CheckRainbowReport, CliError> {
    let text = fs::read_to_string(coloring_path)?;
    let coloring = EdgeColoring::from_text(&text)?;
    let witness = has_rainbow_packing(&coloring, k);
    Ok(CheckRainbowReport {
        n: coloring.order(),
        colors: coloring.num_colors(),
        k,
        rainbow_packing: if witness.is_some() {
            "present"
        } else {
            "absent"
        },
        witness,
    })
}

#[derive(Debug, Serialize)]
pub struct GraphReport {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
}

impl GraphReport {
    fn of(g: &Graph) -> Self {
        GraphReport {
            graph6: graph6::encode(g),
            n: g.order(),
            edges: g.size(),
        }
    }
}

pub fn cmd_i3(code: &str, budget: u64) -> Result<Value, CliError> {
    let g = graph6::decode(code)?;
    let packing = max_independent_triangles_with_budget(&g, budget)?;
    Ok(json!({
        "graph": GraphReport::of(&g),
        "i3": packing.len(),
        "packing": packing.triangles,
    }))
}

pub fn cmd_matching(code: &str) -> Result<Value, CliError> {
    let g = graph6::decode(code)?;
    let m = max_matching(&g);
    Ok(json!({
        "graph": GraphReport::of(&g),
        "matching_number": m.len(),
        "matching": m.edges,
    }))
}

fn parse_num(s: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("expected a number, got {s:?}")))
}

/// Builds a graph from a family name such as `turan:7:2`.
pub fn named_graph(spec: &str) -> Result<Graph, CliError> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let args = parts.map(parse_num).collect::<Result<Vec<_>, _>>()?;
    let g = match (name, args.as_slice()) {
        ("complete", &[n]) => graph::complete_graph(n)?,
        ("empty", &[n]) => Graph::empty(n)?,
        ("cycle", &[n]) => graph::cycle_graph(n)?,
        ("path", &[n]) => graph::path_graph(n)?,
        ("star", &[n]) => graph::star_graph(n)?,
        ("petersen", &[]) => graph::petersen_graph(),
        ("turan", &[n, p]) => graph::turan_graph(n, p)?,
        ("bipartite", &[a, b]) => graph::complete_bipartite(a, b)?,
        ("clique-join", &[n, t]) => graph::clique_join_bipartite(n, t)?,
        _ => return Err(CliError::Usage(format!("unknown graph family {spec:?}"))),
    };
    Ok(g)
}

/// Reads an edge list: the order on the first line, then `u v` per line.
pub fn read_edge_list(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n = parse_num(
        lines
            .next()
            .ok_or_else(|| CliError::Usage("empty edge list".into()))?,
    )?;
    let mut edges = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = f.as_slice() else {
            return Err(CliError::Usage(format!("bad edge line {line:?}")));
        };
        edges.push((parse_num(u)?, parse_num(v)?));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn cmd_decode(code: &str) -> Result<Value, CliError> {
    let g = graph6::decode(code)?;
    Ok(json!({ "graph": GraphReport::of(&g), "edge_list": g.edges() }))
}

pub struct ArSearchArgs {
    pub n: usize,
    pub k: usize,
    pub opts: SearchOptions,
}

pub fn cmd_ar_search(args: &ArSearchArgs) -> Result<Outcome, CliError> {
    let report = ar_exact(args.n, args.k, &args.opts)?;
    if !report.witness_revalidated {
        return Err(CliError::Bug(
            "search witness failed independent revalidation".into(),
        ));
    }
    // The closed form for (t+2)K_3 with t = k-2, for comparison only.
    let reference = (args.k >= 2)
        .then(|| ar_formula(args.n as u64, args.k as u64 - 2).ok())
        .flatten();
    let exit = if report.complete {
        Exit::Success
    } else {
        Exit::Exhausted
    };
    Ok(Outcome::new(
        json!({ "search": report, "formula_reference": reference }),
        exit,
    ))
}

pub fn census_options(n_max: usize, samples: usize, seed: u64, workers: usize) -> CensusOptions {
    CensusOptions {
        n_max,
        samples,
        seed,
        workers,
    }
}

pub fn cmd_verify(which: &str, opts: &CensusOptions) -> Result<Outcome, CliError> {
    let r = match which {
        "moon" => census::verify_moon(opts)?,
        "gamma" => census::verify_gamma(opts)?,
        _ => return Err(CliError::Usage(format!("unknown census {which:?}"))),
    };
    let exit = if r.passed() {
        Exit::Success
    } else {
        Exit::Violation
    };
    Ok(Outcome::new(
        json!({ "passed": r.passed(), "census": r }),
        exit,
    ))
}

pub fn cmd_verify_pairs(
    n: usize,
    t: usize,
    instances: usize,
    max_deletions: usize,
    seed: u64,
    graph: Option<&str>,
) -> Result<Outcome, CliError> {
    if let Some(code) = graph {
        let g = graph6::decode(code)?;
        let ex = census::lemma_pairs_extract(&g, t)?;
        let exit = if ex.violations.is_empty() {
            Exit::Success
        } else {
            Exit::Violation
        };
        return Ok(Outcome::new(json!({ "extraction": ex }), exit));
    }
    let r = census::pairs_property_suite(n, t, instances, max_deletions, seed)?;
    let exit = if r.counterexamples.is_empty() {
        Exit::Success
    } else {
        Exit::Violation
    };
    Ok(Outcome::new(json!({ "suite": r }), exit))
}
