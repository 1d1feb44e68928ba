//! Exhaustive and sampled checks of the extremal results behind the
//! anti-Ramsey bound: Moon's theorem on `(t+1)K_3`-free graphs, the
//! matching bound for triangle-free graphs, and the large-independent-set
//! extraction for dense triangle-free graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::moon_ex;
use crate::graph::{
    clique_join_bipartite, complete_bipartite, random_graph, turan_graph, Graph, GraphBuilder,
};
use crate::graph6;
use crate::iso::are_isomorphic;
use crate::packing::{
    has_k_disjoint_triangles, independent_triangle_number, is_triangle_free, matching_number,
};

/// Largest order [`generate_graphs`] enumerates.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

/// One graph per isomorphism class on `n` vertices.
///
/// Read–Faradzev orderly generation: a graph is kept only in the labelling
/// whose column-major upper-triangle bit string is lexicographically
/// largest. Deleting the last vertex of such a labelling leaves a maximal
/// labelling again, so every class is reached by extending a maximal graph
/// on `n - 1` vertices by one vertex and keeping the maximal results.
pub fn generate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::invalid(format!(
            "exhaustive generation is limited to n <= {MAX_EXHAUSTIVE_ORDER}"
        )));
    }
    let mut level = vec![Graph::empty(0)?];
    for order in 1..=n {
        let mut next = Vec::new();
        for parent in &level {
            for mask in 0u32..(1 << (order - 1)) {
                let mut b = GraphBuilder::from_graph(&grow(parent, order)?);
                for v in 0..order - 1 {
                    if mask >> v & 1 == 1 {
                        b.add_edge(v, order - 1)?;
                    }
                }
                let child = b.build();
                if is_maximal_labelling(&child) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

fn grow(g: &Graph, order: usize) -> Result<Graph> {
    Graph::from_edges(order, &g.edges())
}

/// Whether no relabelling of `g` yields a larger column-major bit string.
fn is_maximal_labelling(g: &Graph) -> bool {
    let n = g.order();
    let column =
        |j: usize| -> u32 { (0..j).fold(0, |acc, i| (acc << 1) | g.has_edge(i, j) as u32) };
    let original: Vec<u32> = (0..n).map(column).collect();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    // Returns false once a strictly larger labelling is found.
    fn extend(g: &Graph, original: &[u32], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let j = perm.len();
        if j == original.len() {
            return true;
        }
        for v in 0..original.len() {
            if used[v] {
                continue;
            }
            let col = perm
                .iter()
                .fold(0u32, |acc, &p| (acc << 1) | g.has_edge(p, v) as u32);
            if col > original[j] {
                return false;
            }
            if col == original[j] {
                perm.push(v);
                used[v] = true;
                let ok = extend(g, original, perm, used);
                used[v] = false;
                perm.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    extend(g, &original, &mut perm, &mut used)
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusOptions {
    /// Largest order scanned.
    pub n_max: usize,
    /// Random graphs per order above [`MAX_EXHAUSTIVE_ORDER`].
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            n_max: MAX_EXHAUSTIVE_ORDER,
            samples: 200,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusViolation {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    /// `t` for the Moon census, `h` for the matching census.
    pub param: usize,
    pub bound: u64,
    pub reason: String,
}

/// A graph attaining the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub graph6: String,
    pub n: usize,
    pub param: usize,
    pub edges: usize,
    pub isomorphic_to_expected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusResult {
    pub kind: &'static str,
    pub n_range: [usize; 2],
    pub exhaustive_up_to: usize,
    pub graphs_examined: usize,
    pub violations: Vec<CensusViolation>,
    pub extremal: Vec<ExtremalRecord>,
}

impl CensusResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-graph check: `(param, bound, expected extremal graph)` or `None` if
/// the graph lies outside the statement's hypothesis.
type Check = fn(&Graph) -> Result<Option<(usize, u64, Graph)>>;

fn moon_check(g: &Graph) -> Result<Option<(usize, u64, Graph)>> {
    let n = g.order();
    let t = independent_triangle_number(g)?;
    // n > 9t/2 + 4
    if 2 * n <= 9 * t + 8 {
        return Ok(None);
    }
    let bound = moon_ex(n as u64, t as u64)?;
    Ok(Some((t, bound, clique_join_bipartite(n, t)?)))
}

fn gamma_check(g: &Graph) -> Result<Option<(usize, u64, Graph)>> {
    if !is_triangle_free(g) {
        return Ok(None);
    }
    let n = g.order();
    let h = matching_number(g);
    Ok(Some((
        h,
        (h * (n - h)) as u64,
        complete_bipartite(h, n - h)?,
    )))
}

fn census(kind: &'static str, check: Check, opts: &CensusOptions) -> Result<CensusResult> {
    if opts.workers == 0 {
        return Err(Error::invalid("workers must be at least 1"));
    }
    let mut graphs = Vec::new();
    for n in 1..=opts.n_max.min(MAX_EXHAUSTIVE_ORDER) {
        graphs.extend(generate_graphs(n)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in MAX_EXHAUSTIVE_ORDER + 1..=opts.n_max {
        for i in 0..opts.samples {
            let p = (i as f64 + 0.5) / opts.samples as f64;
            graphs.push(random_graph(n, p, &mut rng)?);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    type Outcome = (Option<CensusViolation>, Option<ExtremalRecord>);
    let outcomes: Vec<Result<Outcome>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| -> Result<Outcome> {
                let Some((param, bound, expected)) = check(g)? else {
                    return Ok((None, None));
                };
                let e = g.size() as u64;
                let code = graph6::encode(g);
                let violation = |reason: &str| CensusViolation {
                    graph6: code.clone(),
                    n: g.order(),
                    edges: g.size(),
                    param,
                    bound,
                    reason: reason.to_string(),
                };
                if e > bound {
                    return Ok((Some(violation("edge count exceeds the bound")), None));
                }
                if e < bound {
                    return Ok((None, None));
                }
                let iso = are_isomorphic(g, &expected)?;
                let record = ExtremalRecord {
                    graph6: code.clone(),
                    n: g.order(),
                    param,
                    edges: g.size(),
                    isomorphic_to_expected: iso,
                };
                let v = (!iso).then(|| violation("bound attained by a non-extremal graph"));
                Ok((v, Some(record)))
            })
            .collect()
    });
    let mut violations = Vec::new();
    let mut extremal = Vec::new();
    for o in outcomes {
        let (v, x) = o?;
        violations.extend(v);
        extremal.extend(x);
    }
    violations.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    extremal.sort_by(|a, b| (a.n, a.param, &a.graph6).cmp(&(b.n, b.param, &b.graph6)));
    extremal.dedup();
    Ok(CensusResult {
        kind,
        n_range: [1, opts.n_max],
        exhaustive_up_to: opts.n_max.min(MAX_EXHAUSTIVE_ORDER),
        graphs_examined: graphs.len(),
        violations,
        extremal,
    })
}

/// Every graph with `I₃(G) = t` and `n > 9t/2 + 4` has at most
/// `moon_ex(n, t)` edges, with equality only for `K_t ∨ T_2(n-t)`.
pub fn verify_moon(opts: &CensusOptions) -> Result<CensusResult> {
    census("moon", moon_check, opts)
}

/// Every triangle-free graph with `ν(G) = h` has at most `h(n-h)` edges,
/// with equality only for `K_{h,n-h}`.
pub fn verify_gamma(opts: &CensusOptions) -> Result<CensusResult> {
    census("gamma", gamma_check, opts)
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationResult {
    pub n: usize,
    pub t: usize,
    pub missing_edges: usize,
    /// Non-edges whose addition did not create `t + 1` disjoint triangles.
    pub failures: Vec<(usize, usize)>,
}

/// Adds each missing edge of `K_t ∨ T_2(n-t)` in turn and checks that the
/// result contains `t + 1` disjoint triangles.
pub fn perturbation_check(n: usize, t: usize) -> Result<PerturbationResult> {
    let g = clique_join_bipartite(n, t)?;
    let missing = g.non_edges();
    let mut failures = Vec::new();
    for &(u, v) in &missing {
        if !has_k_disjoint_triangles(&g.with_edge(u, v)?, t + 1)? {
            failures.push((u, v));
        }
    }
    Ok(PerturbationResult {
        n,
        t,
        missing_edges: missing.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairsViolation {
    NotIndependent,
    /// `|X| < n/2 - 2`
    XTooSmall {
        size: usize,
    },
    /// `|S| > 7`
    TooManyLowDegree {
        size: usize,
    },
    /// `|X'| < n/2 - 9`
    XPrimeTooSmall {
        size: usize,
    },
    /// `d(x) + d(y) < 3n/4`
    PairDegreeSum {
        x: usize,
        y: usize,
        sum: usize,
    },
}

/// The independent set `X = N(u)` of a maximum-degree vertex `u`, its
/// low-degree part `S = {v ∈ X : d(v) < 3n/8}` and `X' = X \ S`.
#[derive(Debug, Clone, Serialize)]
pub struct PairsExtraction {
    pub n: usize,
    pub t: usize,
    pub u: usize,
    pub x: Vec<usize>,
    pub s: Vec<usize>,
    pub x_prime: Vec<usize>,
    /// Smallest `d(x) + d(y)` over pairs of `X'`.
    pub min_pair_degree_sum: Option<usize>,
    /// Failed conclusions; any entry is a counterexample.
    pub violations: Vec<PairsViolation>,
}

/// Whether `g` meets the hypotheses: triangle-free, `n >= 12t + 54` and
/// `e(G) >= n²/4 - n/2 - 6t - 11`.
pub fn pairs_precondition(g: &Graph, t: usize) -> std::result::Result<(), String> {
    let n = g.order();
    if n < 12 * t + 54 {
        return Err(format!("n = {n} is below 12t + 54 = {}", 12 * t + 54));
    }
    // 4e >= n² - 2n - 24t - 44
    let lhs = 4 * g.size() as i64;
    let rhs = (n * n) as i64 - 2 * n as i64 - 24 * t as i64 - 44;
    if lhs < rhs {
        return Err(format!("e(G) = {} is below n²/4 - n/2 - 6t - 11", g.size()));
    }
    if !is_triangle_free(g) {
        return Err("graph contains a triangle".into());
    }
    Ok(())
}

pub fn lemma_pairs_extract(g: &Graph, t: usize) -> Result<PairsExtraction> {
    pairs_precondition(g, t).map_err(Error::InvalidParameter)?;
    let n = g.order();
    let degrees = g.degrees();
    let max = g.max_degree();
    let u = (0..n).find(|&v| degrees[v] == max).expect("n >= 54");
    let x_set = *g.neighbors(u);
    let x = x_set.to_vec();
    // d(v) < 3n/8
    let s: Vec<usize> = x
        .iter()
        .copied()
        .filter(|&v| 8 * degrees[v] < 3 * n)
        .collect();
    let x_prime: Vec<usize> = x.iter().copied().filter(|v| !s.contains(v)).collect();

    let mut violations = Vec::new();
    if !g.is_independent(&x_set) {
        violations.push(PairsViolation::NotIndependent);
    }
    if 2 * x.len() + 4 < n {
        violations.push(PairsViolation::XTooSmall { size: x.len() });
    }
    if s.len() > 7 {
        violations.push(PairsViolation::TooManyLowDegree { size: s.len() });
    }
    if 2 * x_prime.len() + 18 < n {
        violations.push(PairsViolation::XPrimeTooSmall {
            size: x_prime.len(),
        });
    }
    let mut min_sum = None;
    for (i, &a) in x_prime.iter().enumerate() {
        for &b in &x_prime[i + 1..] {
            let sum = degrees[a] + degrees[b];
            min_sum = Some(min_sum.map_or(sum, |m: usize| m.min(sum)));
            if 4 * sum < 3 * n {
                violations.push(PairsViolation::PairDegreeSum { x: a, y: b, sum });
            }
        }
    }
    Ok(PairsExtraction {
        n,
        t,
        u,
        x,
        s,
        x_prime,
        min_pair_degree_sum: min_sum,
        violations,
    })
}

/// `T_2(n)` minus a uniformly random number (at most `max_deletions`) of
/// random edges, with vertex labels shuffled.
pub fn random_dense_triangle_free<R: Rng + ?Sized>(
    n: usize,
    max_deletions: usize,
    rng: &mut R,
) -> Result<Graph> {
    let base = turan_graph(n, 2)?;
    let mut edges = base.edges();
    edges.shuffle(rng);
    let drop = rng.gen_range(0..=max_deletions.min(edges.len()));
    let g = base.without_edges(&edges[..drop])?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

#[derive(Debug, Clone, Serialize)]
pub struct PairsSuiteResult {
    pub n: usize,
    pub t: usize,
    pub instances: usize,
    /// Instances rejected because they missed the hypotheses.
    pub skipped: usize,
    pub checked: usize,
    pub counterexamples: Vec<(String, Vec<PairsViolation>)>,
}

/// Runs [`lemma_pairs_extract`] on `instances` seeded random dense
/// triangle-free graphs.
pub fn pairs_property_suite(
    n: usize,
    t: usize,
    instances: usize,
    max_deletions: usize,
    seed: u64,
) -> Result<PairsSuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut skipped = 0;
    let mut counterexamples = Vec::new();
    for _ in 0..instances {
        let g = random_dense_triangle_free(n, max_deletions, &mut rng)?;
        if pairs_precondition(&g, t).is_err() {
            skipped += 1;
            continue;
        }
        let ex = lemma_pairs_extract(&g, t)?;
        if !ex.violations.is_empty() {
            counterexamples.push((graph6::encode(&g), ex.violations));
        }
    }
    Ok(PairsSuiteResult {
        n,
        t,
        instances,
        skipped,
        checked: instances - skipped,
        counterexamples,
    })
}
