//! Exact anti-Ramsey numbers `ar(n, kK_3)` for tiny `n`.
//!
//! Colourings are enumerated up to colour relabelling as restricted-growth
//! strings over the edges of `K_n` (edge `i` receives a block id at most one
//! above the largest id used so far). Edges are visited in colex order so
//! that triangles close as early as possible, and a partial colouring is
//! abandoned as soon as its coloured triangles already hold a rainbow `kK_3`.
//!
//! The rainbow test here is deliberately separate from
//! [`crate::coloring::has_rainbow_packing`]; witnesses are re-checked with
//! that routine before being reported.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{
    build_lower_bound_coloring, edge_index, has_rainbow_packing, Color, EdgeColoring,
};
use crate::error::{Error, Result};
use crate::formulas::binom2;

/// Largest `n` the search accepts.
pub const MAX_SEARCH_ORDER: usize = 32;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Cap on search nodes (colour assignments tried), shared across workers
    /// and, for [`ar_exact`], across all colour counts.
    pub budget: u64,
    pub workers: usize,
    /// Prefix length at which the partition tree is cut into subtrees.
    pub split_depth: usize,
    /// Where to write (and, with `resume`, read) the search frontier.
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Seed [`ar_exact`] with the lower-bound construction when it applies.
    pub seed_with_construction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
            workers: 1,
            split_depth: 6,
            checkpoint: None,
            resume: false,
            seed_with_construction: true,
        }
    }
}

/// Edge `i` of `K_n` in colex order: `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn colex_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Converts a block assignment over colex positions into a colouring.
fn to_coloring(n: usize, blocks: &[u16]) -> Result<EdgeColoring> {
    let mut colors = vec![0 as Color; blocks.len()];
    for (&(u, v), &b) in colex_edges(n).iter().zip(blocks) {
        colors[edge_index(n, u, v)] = b as Color;
    }
    EdgeColoring::new(n, colors)
}

fn from_coloring(c: &EdgeColoring) -> Vec<u16> {
    colex_edges(c.order())
        .iter()
        .map(|&(u, v)| c.color(u, v) as u16)
        .collect()
}

/// Incremental constraint checked as each edge receives its block.
trait Pruner: Clone + Send {
    /// Records `color` at `pos`; returns false if the partial colouring is dead.
    fn assign(&mut self, pos: usize, color: u16) -> bool;
    fn unassign(&mut self, pos: usize);
}

#[derive(Clone)]
struct NoPruning;

impl Pruner for NoPruning {
    fn assign(&mut self, _: usize, _: u16) -> bool {
        true
    }
    fn unassign(&mut self, _: usize) {}
}

#[derive(Clone, Copy)]
struct ClosedTriangle {
    vertices: u32,
    others: [usize; 2],
}

/// Rejects partial colourings whose fully coloured triangles contain a
/// rainbow `kK_3`.
#[derive(Clone)]
struct RainbowPruner {
    k: usize,
    closing: Vec<Vec<ClosedTriangle>>,
    colors: Vec<u16>,
    rainbow: Vec<(u32, [u16; 3])>,
    pushed: Vec<usize>,
}

impl RainbowPruner {
    fn new(n: usize, k: usize) -> Self {
        let edges = colex_edges(n);
        let pos_of = |u: usize, v: usize| {
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            v * (v - 1) / 2 + u
        };
        let mut closing = vec![Vec::new(); edges.len()];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let ps = [pos_of(a, b), pos_of(a, c), pos_of(b, c)];
                    let last = *ps.iter().max().unwrap();
                    let others: Vec<usize> = ps.iter().copied().filter(|&p| p != last).collect();
                    closing[last].push(ClosedTriangle {
                        vertices: (1 << a) | (1 << b) | (1 << c),
                        others: [others[0], others[1]],
                    });
                }
            }
        }
        RainbowPruner {
            k,
            closing,
            colors: vec![0; edges.len()],
            rainbow: Vec::new(),
            pushed: vec![0; edges.len()],
        }
    }

    /// Whether `k - 1` stacked rainbow triangles complete a rainbow `kK_3`
    /// together with `(verts, cols)`.
    fn extends(&self, start: usize, need: usize, verts: u32, cols: &mut Vec<u16>) -> bool {
        if need == 0 {
            return true;
        }
        for i in start..self.rainbow.len() {
            let (v, c) = self.rainbow[i];
            if v & verts != 0 || c.iter().any(|x| cols.contains(x)) {
                continue;
            }
            cols.extend_from_slice(&c);
            if self.extends(i + 1, need - 1, verts | v, cols) {
                return true;
            }
            cols.truncate(cols.len() - 3);
        }
        false
    }
}

impl Pruner for RainbowPruner {
    fn assign(&mut self, pos: usize, color: u16) -> bool {
        self.colors[pos] = color;
        self.pushed[pos] = 0;
        let mut fresh: Vec<(u32, [u16; 3])> = Vec::new();
        for t in &self.closing[pos] {
            let c = [color, self.colors[t.others[0]], self.colors[t.others[1]]];
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                continue;
            }
            let mut cols = c.to_vec();
            if self.extends(0, self.k - 1, t.vertices, &mut cols) {
                return false;
            }
            fresh.push((t.vertices, c));
        }
        self.pushed[pos] = fresh.len();
        self.rainbow.extend(fresh);
        true
    }

    fn unassign(&mut self, pos: usize) {
        let keep = self.rainbow.len() - self.pushed[pos];
        self.rainbow.truncate(keep);
        self.pushed[pos] = 0;
    }
}

/// Node accounting shared between workers.
struct Budget {
    spent: AtomicU64,
    limit: u64,
    exhausted: AtomicBool,
    /// Index of the earliest subtree known to hold a witness.
    found: AtomicUsize,
}

impl Budget {
    fn new(limit: u64, already: u64) -> Self {
        Budget {
            spent: AtomicU64::new(already),
            limit,
            exhausted: AtomicBool::new(already > limit),
            found: AtomicUsize::new(usize::MAX),
        }
    }

    fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

struct Walker<'a, P> {
    m: usize,
    r: usize,
    assign: Vec<u16>,
    blocks: usize,
    pruner: P,
    budget: &'a Budget,
    subtree: usize,
    local: u64,
    /// When set, prefixes of this length are collected instead of explored.
    cut: Option<(usize, Vec<Vec<u16>>)>,
    /// Count complete strings instead of stopping at the first.
    count_only: bool,
    leaves: u64,
}

impl<'a, P: Pruner> Walker<'a, P> {
    fn new(m: usize, r: usize, pruner: P, budget: &'a Budget, subtree: usize) -> Self {
        Walker {
            m,
            r,
            assign: Vec::with_capacity(m),
            blocks: 0,
            pruner,
            budget,
            subtree,
            local: 0,
            cut: None,
            count_only: false,
            leaves: 0,
        }
    }

    fn flush(&mut self) -> bool {
        let total = self.budget.spent.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.budget.limit {
            self.budget.exhausted.store(true, Ordering::Relaxed);
        }
        !self.budget.exhausted.load(Ordering::Relaxed)
            && self.budget.found.load(Ordering::Relaxed) >= self.subtree
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        self.local < FLUSH_EVERY || self.flush()
    }

    /// Replays a prefix; false if it violates the constraint.
    fn replay(&mut self, prefix: &[u16]) -> bool {
        for &c in prefix {
            let pos = self.assign.len();
            if c as usize > self.blocks || !self.pruner.assign(pos, c) {
                return false;
            }
            self.assign.push(c);
            if c as usize == self.blocks {
                self.blocks += 1;
            }
        }
        self.blocks <= self.r && self.blocks + (self.m - self.assign.len()) >= self.r
    }

    fn walk(&mut self) -> Step {
        let i = self.assign.len();
        if let Some((depth, out)) = &mut self.cut {
            if i == *depth {
                out.push(self.assign.clone());
                return Step::Exhausted;
            }
        }
        if i == self.m {
            debug_assert_eq!(self.blocks, self.r);
            self.leaves += 1;
            return if self.count_only {
                Step::Exhausted
            } else {
                Step::Found
            };
        }
        let remaining_after = self.m - i - 1;
        let reuse = self.blocks + remaining_after >= self.r;
        let first = if reuse { 0 } else { self.blocks };
        let last = if self.blocks < self.r {
            self.blocks
        } else {
            self.blocks - 1
        };
        for c in first..=last {
            if !self.tick() {
                return Step::Stopped;
            }
            let c16 = c as u16;
            if self.pruner.assign(i, c16) {
                let fresh = c == self.blocks;
                self.assign.push(c16);
                if fresh {
                    self.blocks += 1;
                }
                match self.walk() {
                    Step::Exhausted => {}
                    other => return other,
                }
                self.assign.pop();
                if fresh {
                    self.blocks -= 1;
                }
            }
            self.pruner.unassign(i);
        }
        Step::Exhausted
    }
}

/// Number of restricted-growth strings of length `m` with exactly `r`
/// blocks produced by the search enumerator, i.e. `S(m, r)`.
pub fn count_canonical_partitions(m: usize, r: usize) -> u64 {
    if r > m || (r == 0 && m > 0) {
        return 0;
    }
    let budget = Budget::new(u64::MAX, 0);
    let mut w = Walker::new(m, r, NoPruning, &budget, 0);
    w.count_only = true;
    w.walk();
    w.leaves
}

/// Result of certifying one colour count.
#[derive(Debug, Clone)]
pub enum Certification {
    /// A surjective colouring with no rainbow `kK_3`.
    Present(EdgeColoring),
    /// The canonical partition tree was exhausted.
    Absent,
    /// Budget ran out; the listed prefixes are still unexplored.
    Exhausted { frontier: Vec<Vec<u16>> },
}

impl Certification {
    pub fn label(&self) -> &'static str {
        match self {
            Certification::Present(_) => "present",
            Certification::Absent => "absent",
            Certification::Exhausted { .. } => "exhausted",
        }
    }
}

struct Certifier<'a> {
    n: usize,
    k: usize,
    m: usize,
    opts: &'a SearchOptions,
    pool: rayon::ThreadPool,
    template: RainbowPruner,
}

enum SubResult {
    Found(Vec<u16>),
    Done,
    Unfinished,
}

impl<'a> Certifier<'a> {
    fn new(n: usize, k: usize, opts: &'a SearchOptions) -> Result<Self> {
        if n > MAX_SEARCH_ORDER {
            return Err(Error::invalid(format!(
                "exact search supports n <= {MAX_SEARCH_ORDER}, got {n}"
            )));
        }
        if opts.workers == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        if opts.budget == 0 {
            return Err(Error::invalid("node budget must be positive"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        Ok(Certifier {
            n,
            k,
            m: binom2(n as u64) as usize,
            opts,
            pool,
            template: RainbowPruner::new(n, k),
        })
    }

    /// Whether a full colouring (colex block ids) avoids a rainbow `kK_3`.
    fn admits(&self, blocks: &[u16]) -> bool {
        let mut p = self.template.clone();
        blocks.iter().enumerate().all(|(pos, &c)| p.assign(pos, c))
    }

    fn frontier(&self, r: usize, budget: &Budget) -> Option<Vec<Vec<u16>>> {
        let depth = self.opts.split_depth.min(self.m);
        let mut w = Walker::new(self.m, r, self.template.clone(), budget, 0);
        w.cut = Some((depth, Vec::new()));
        let step = w.walk();
        w.flush();
        match step {
            Step::Stopped => None,
            _ => w.cut.map(|(_, v)| v),
        }
    }

    fn explore(&self, r: usize, idx: usize, prefix: &[u16], budget: &Budget) -> SubResult {
        if budget.found.load(Ordering::Relaxed) < idx || budget.exhausted.load(Ordering::Relaxed) {
            return SubResult::Unfinished;
        }
        let mut w = Walker::new(self.m, r, self.template.clone(), budget, idx);
        if !w.replay(prefix) {
            return SubResult::Done;
        }
        let step = w.walk();
        w.flush();
        match step {
            Step::Found => {
                budget.found.fetch_min(idx, Ordering::Relaxed);
                SubResult::Found(w.assign)
            }
            Step::Exhausted => SubResult::Done,
            Step::Stopped => SubResult::Unfinished,
        }
    }

    /// Decides whether a surjective `r`-colouring avoids a rainbow `kK_3`.
    fn certify(&self, r: usize, budget: &Budget, resume: Option<Vec<Vec<u16>>>) -> Certification {
        if 3 * self.k > self.n {
            // Too few vertices for k disjoint triangles: the least canonical
            // string already avoids.
            let mut blocks = vec![0u16; self.m];
            for (i, b) in blocks
                .iter_mut()
                .rev()
                .take(r.saturating_sub(1))
                .enumerate()
            {
                *b = (r - 1 - i) as u16;
            }
            return Certification::Present(to_coloring(self.n, &blocks).expect("surjective"));
        }
        let prefixes = match resume {
            Some(p) => p,
            None => match self.frontier(r, budget) {
                Some(p) => p,
                None => {
                    return Certification::Exhausted {
                        frontier: vec![Vec::new()],
                    }
                }
            },
        };
        let results: Vec<SubResult> = self.pool.install(|| {
            prefixes
                .par_iter()
                .enumerate()
                .map(|(i, p)| self.explore(r, i, p, budget))
                .collect()
        });
        let mut unfinished = Vec::new();
        for (p, res) in prefixes.iter().zip(results) {
            match res {
                SubResult::Found(blocks) => {
                    let c =
                        to_coloring(self.n, &blocks).expect("search yields surjective colourings");
                    return Certification::Present(c);
                }
                SubResult::Done => {}
                SubResult::Unfinished => unfinished.push(p.clone()),
            }
        }
        if unfinished.is_empty() {
            Certification::Absent
        } else {
            Certification::Exhausted {
                frontier: unfinished,
            }
        }
    }
}

fn validate_nrk(n: usize, r: usize, k: usize) -> Result<usize> {
    let m = binom2(n as u64) as usize;
    if r > m {
        return Err(Error::invalid(format!(
            "K_{n} has only {m} edges, cannot use {r} colours"
        )));
    }
    if r == 0 && m > 0 {
        return Err(Error::invalid(
            "a colouring of a nonempty edge set needs at least one colour",
        ));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok(m)
}

/// Searches for a surjective `r`-colouring of `K_n` without a rainbow
/// `kK_3`. Returns the lexicographically least one in canonical form when
/// the search runs to completion.
pub fn exists_avoiding_coloring(
    n: usize,
    r: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<Certification> {
    exists_avoiding_coloring_with_hint(n, r, k, None, opts)
}

/// As [`exists_avoiding_coloring`], accepting a candidate colouring that is
/// returned directly if it is valid for `(n, r, k)`.
pub fn exists_avoiding_coloring_with_hint(
    n: usize,
    r: usize,
    k: usize,
    hint: Option<&EdgeColoring>,
    opts: &SearchOptions,
) -> Result<Certification> {
    validate_nrk(n, r, k)?;
    let cert = Certifier::new(n, k, opts)?;
    if let Some(h) = hint {
        if h.order() == n && h.num_colors() == r && cert.admits(&from_coloring(h)) {
            return Ok(Certification::Present(h.clone()));
        }
    }
    let resume = load_resume(opts, n, k, Some(r))?;
    let already = resume.as_ref().map_or(0, |c| c.nodes);
    let budget = Budget::new(already.saturating_add(opts.budget), already);
    let out = cert.certify(r, &budget, resume.map(|c| c.frontier));
    if let (Certification::Exhausted { frontier }, Some(path)) = (&out, &opts.checkpoint) {
        Checkpoint {
            n,
            k,
            r,
            nodes: budget.spent(),
            lo: 0,
            hi: 0,
            frontier: frontier.clone(),
        }
        .write(path)?;
    } else {
        clear_checkpoint(opts)?;
    }
    Ok(out)
}

/// A finished search leaves no frontier behind.
fn clear_checkpoint(opts: &SearchOptions) -> Result<()> {
    match &opts.checkpoint {
        Some(path) if path.exists() => Ok(fs::remove_file(path)?),
        _ => Ok(()),
    }
}

fn load_resume(
    opts: &SearchOptions,
    n: usize,
    k: usize,
    r: Option<usize>,
) -> Result<Option<Checkpoint>> {
    let Some(path) = opts.checkpoint.as_ref().filter(|_| opts.resume) else {
        return Ok(None);
    };
    if !path.exists() {
        return Ok(None);
    }
    let ck = Checkpoint::read(path)?;
    if ck.n != n || ck.k != k || r.is_some_and(|r| r != ck.r) {
        return Err(Error::invalid(format!(
            "checkpoint is for n={}, k={}, r={}; not this run",
            ck.n, ck.k, ck.r
        )));
    }
    Ok(Some(ck))
}

/// Per colour count outcome within an [`ar_exact`] run.
#[derive(Debug, Clone, Serialize)]
pub struct LevelStat {
    pub r: usize,
    pub outcome: &'static str,
    pub nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    /// `ar(n, kK_3)` when the search completed.
    pub ar: Option<usize>,
    /// Inclusive interval known to contain `ar(n, kK_3)`.
    pub bracket: [usize; 2],
    pub complete: bool,
    /// Avoiding colouring with `ar - 1` colours (or the best one found).
    pub witness: Option<EdgeColoring>,
    /// Whether the witness passed the independent rainbow check.
    pub witness_revalidated: bool,
    pub seeded_from_construction: bool,
    pub levels: Vec<LevelStat>,
    pub nodes: u64,
    pub wall_time_secs: f64,
}

/// Computes `ar(n, kK_3)` by certifying colour counts from `C(n,2)`
/// downwards until an avoiding colouring appears. Merging two colour
/// classes of an avoiding colouring keeps it avoiding, so the first hit is
/// the maximum.
pub fn ar_exact(n: usize, k: usize, opts: &SearchOptions) -> Result<SearchReport> {
    if k == 0 || n < 3 * k {
        return Err(Error::invalid(format!(
            "ar search needs k >= 1 and n >= 3k, got n={n}, k={k}"
        )));
    }
    let start = Instant::now();
    let m = binom2(n as u64) as usize;
    let cert = Certifier::new(n, k, opts)?;

    // r = 1 always avoids (every triangle is monochromatic).
    let mut known = (1, EdgeColoring::monochromatic(n)?);
    let mut seeded = false;
    if opts.seed_with_construction && k >= 2 && n > 3 * (k - 2) + 6 && n <= MAX_SEARCH_ORDER {
        let c = build_lower_bound_coloring(n, k - 2)?;
        if !cert.admits(&from_coloring(&c)) {
            return Err(Error::invalid(
                "lower-bound construction failed the search's own rainbow check",
            ));
        }
        known = (c.num_colors(), c);
        seeded = true;
    }

    let resume = load_resume(opts, n, k, None)?;
    let already = resume.as_ref().map_or(0, |c| c.nodes);
    let budget = Budget::new(already.saturating_add(opts.budget), already);
    let (mut r, mut frontier) = match resume {
        Some(ck) => (ck.r, Some(ck.frontier)),
        None => (m, None),
    };

    let mut levels = Vec::new();
    let mut outcome: Option<(bool, usize)> = None; // (complete, max avoiding r)
    while r > known.0 {
        let before = budget.spent();
        let res = cert.certify(r, &budget, frontier.take());
        levels.push(LevelStat {
            r,
            outcome: res.label(),
            nodes: budget.spent() - before,
        });
        match res {
            Certification::Present(c) => {
                known = (r, c);
                outcome = Some((true, r));
                break;
            }
            Certification::Absent => r -= 1,
            Certification::Exhausted { frontier } => {
                if let Some(path) = &opts.checkpoint {
                    Checkpoint {
                        n,
                        k,
                        r,
                        nodes: budget.spent(),
                        lo: known.0 as u64 + 1,
                        hi: r as u64 + 1,
                        frontier,
                    }
                    .write(path)?;
                }
                outcome = Some((false, r));
                break;
            }
        }
    }
    if !matches!(outcome, Some((false, _))) {
        clear_checkpoint(opts)?;
    }
    let (complete, bracket) = match outcome {
        Some((true, r)) => (true, [r + 1, r + 1]),
        Some((false, r)) => (false, [known.0 + 1, r + 1]),
        None => (true, [known.0 + 1, known.0 + 1]),
    };
    let witness = known.1;
    let revalidated =
        witness.num_colors() == bracket[0] - 1 && has_rainbow_packing(&witness, k).is_none();
    Ok(SearchReport {
        n,
        k,
        ar: complete.then_some(bracket[0]),
        bracket,
        complete,
        witness: Some(witness),
        witness_revalidated: revalidated,
        seeded_from_construction: seeded,
        levels,
        nodes: budget.spent(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

const CHECKPOINT_MAGIC: &[u8; 8] = b"RBLABCKP";
const CHECKPOINT_VERSION: u32 = 1;

/// Resumable search state: the colour count being certified and the
/// restricted-growth prefixes whose subtrees are still unexplored.
///
/// Layout (little endian): magic `RBLABCKP`, version `u32`, `n`, `k`, `r`
/// as `u32`, nodes spent `u64`, bracket `lo`, `hi` as `u64`, prefix count
/// `u64`, then each prefix as a `u32` length followed by `u16` block ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub nodes: u64,
    pub lo: u64,
    pub hi: u64,
    pub frontier: Vec<Vec<u16>>,
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(CHECKPOINT_MAGIC);
        out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        for x in [self.n, self.k, self.r] {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
        for x in [self.nodes, self.lo, self.hi, self.frontier.len() as u64] {
            out.extend_from_slice(&x.to_le_bytes());
        }
        for p in &self.frontier {
            out.extend_from_slice(&(p.len() as u32).to_le_bytes());
            for &b in p {
                out.extend_from_slice(&b.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self> {
        let mut magic = [0u8; 8];
        read_exact(&mut bytes, &mut magic)?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(Error::malformed("not a search checkpoint"));
        }
        let version = read_u32(&mut bytes)?;
        if version != CHECKPOINT_VERSION {
            return Err(Error::malformed(format!(
                "unsupported checkpoint version {version}"
            )));
        }
        let n = read_u32(&mut bytes)? as usize;
        let k = read_u32(&mut bytes)? as usize;
        let r = read_u32(&mut bytes)? as usize;
        let nodes = read_u64(&mut bytes)?;
        let lo = read_u64(&mut bytes)?;
        let hi = read_u64(&mut bytes)?;
        let count = read_u64(&mut bytes)?;
        let m = binom2(n as u64) as usize;
        let mut frontier = Vec::new();
        for _ in 0..count {
            let len = read_u32(&mut bytes)? as usize;
            if len > m {
                return Err(Error::malformed(
                    "checkpoint prefix longer than the edge count",
                ));
            }
            let mut p = Vec::with_capacity(len);
            for _ in 0..len {
                let mut b = [0u8; 2];
                read_exact(&mut bytes, &mut b)?;
                p.push(u16::from_le_bytes(b));
            }
            frontier.push(p);
        }
        if !bytes.is_empty() {
            return Err(Error::malformed("trailing bytes after checkpoint frontier"));
        }
        Ok(Checkpoint {
            n,
            k,
            r,
            nodes,
            lo,
            hi,
            frontier,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&self.to_bytes())?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut buf = Vec::new();
        fs::File::open(path)?.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }
}

fn read_exact(bytes: &mut &[u8], out: &mut [u8]) -> Result<()> {
    io::Read::read_exact(bytes, out).map_err(|_| Error::malformed("truncated checkpoint"))
}

fn read_u32(bytes: &mut &[u8]) -> Result<u32> {
    let mut b = [0u8; 4];
    read_exact(bytes, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(bytes: &mut &[u8]) -> Result<u64> {
    let mut b = [0u8; 8];
    read_exact(bytes, &mut b)?;
    Ok(u64::from_le_bytes(b))
}
