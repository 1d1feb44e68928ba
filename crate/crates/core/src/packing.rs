//! Triangles, matchings and triangle packings.
//!
//! `ν(G)` is computed with Edmonds' blossom algorithm and `I₃(G)` with a
//! certified branch and bound. A brute-force matching oracle is kept
//! alongside for cross-checking.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A vertex triple `[a, b, c]` with `a < b < c`.
pub type Triangle = [usize; 3];

/// All triangles of `g` in lexicographic order.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in g.neighbors(a).iter().filter(|&b| b > a) {
            let common = g.neighbors(a).intersection(g.neighbors(b));
            for c in common.iter().filter(|&c| c > b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn is_triangle_free(g: &Graph) -> bool {
    (0..g.order()).all(|a| {
        g.neighbors(a)
            .iter()
            .filter(|&b| b > a)
            .all(|b| g.neighbors(a).intersection(g.neighbors(b)).is_empty())
    })
}

/// `N(x) ∩ N(y)`.
pub fn common_neighborhood(g: &Graph, x: usize, y: usize) -> Result<VertexSet> {
    if x == y {
        return Err(Error::invalid(
            "common neighbourhood needs two distinct vertices",
        ));
    }
    if x >= g.order() || y >= g.order() {
        return Err(Error::invalid("vertex out of range"));
    }
    Ok(g.neighbors(x).intersection(g.neighbors(y)))
}

/// Whether vertex `w` is adjacent to both ends of the edge `uv`.
pub fn is_friendly(g: &Graph, (u, v): (usize, usize), w: usize) -> Result<bool> {
    if w == u || w == v {
        return Err(Error::invalid("friendliness needs a vertex off the edge"));
    }
    if !g.has_edge(u, v) {
        return Err(Error::invalid(format!("({u},{v}) is not an edge")));
    }
    if w >= g.order() {
        return Err(Error::invalid("vertex out of range"));
    }
    Ok(g.has_edge(u, w) && g.has_edge(v, w))
}

/// A set of pairwise vertex-disjoint edges, each stored as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that every pair is an edge of `g` and no vertex repeats.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(Error::invalid(format!(
                    "matching pair ({u},{v}) is not an edge"
                )));
            }
            if seen.contains(u) || seen.contains(v) {
                return Err(Error::invalid(format!(
                    "matching pair ({u},{v}) reuses a vertex"
                )));
            }
            seen.insert(u);
            seen.insert(v);
        }
        Ok(())
    }
}

const NONE: usize = usize::MAX;

/// Maximum cardinality matching on a general graph.
pub fn max_matching(g: &Graph) -> Matching {
    let mut b = Blossom::new(g);
    for root in 0..g.order() {
        if b.mate[root] == NONE {
            if let Some(end) = b.find_augmenting_path(root) {
                b.augment(end);
            }
        }
    }
    let mut edges: Vec<_> = (0..g.order())
        .filter(|&v| b.mate[v] != NONE && v < b.mate[v])
        .map(|v| (v, b.mate[v]))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

/// `ν(G)`.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighbors(v).iter() {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom onto its base.
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Largest edge count accepted by [`max_matching_bruteforce`].
pub const BRUTEFORCE_MATCHING_MAX_EDGES: usize = 40;

/// `ν(G)` by include/exclude branching over the edge list. Independent of
/// the blossom implementation; intended as an oracle on small graphs.
pub fn max_matching_bruteforce(g: &Graph) -> Result<usize> {
    let edges = g.edges();
    if edges.len() > BRUTEFORCE_MATCHING_MAX_EDGES {
        return Err(Error::invalid(format!(
            "brute-force matching limited to {BRUTEFORCE_MATCHING_MAX_EDGES} edges, got {}",
            edges.len()
        )));
    }
    // Relabel touched vertices densely.
    let mut label = vec![NONE; g.order()];
    let mut next = 0;
    let mut relabelled = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        for x in [u, v] {
            if label[x] == NONE {
                label[x] = next;
                next += 1;
            }
        }
        relabelled.push((label[u], label[v]));
    }
    fn go(
        edges: &[(usize, usize)],
        i: usize,
        used: &mut [bool],
        size: usize,
        free: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(size);
        if i == edges.len() || size + (edges.len() - i).min(free / 2) <= *best {
            return;
        }
        let (u, v) = edges[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            go(edges, i + 1, used, size + 1, free - 2, best);
            used[u] = false;
            used[v] = false;
        }
        go(edges, i + 1, used, size, free, best);
    }
    let mut best = 0;
    go(&relabelled, 0, &mut vec![false; next], 0, next, &mut best);
    Ok(best)
}

/// A set of pairwise vertex-disjoint triangles.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TrianglePacking {
    pub triangles: Vec<Triangle>,
}

impl TrianglePacking {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.triangles.iter().flatten().copied().collect()
    }

    /// Checks that every triple is a triangle of `g` and triples are disjoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for t in &self.triangles {
            let [a, b, c] = *t;
            if !(a < b && b < c) {
                return Err(Error::invalid(format!("triple {t:?} is not sorted")));
            }
            if !(g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) {
                return Err(Error::invalid(format!("triple {t:?} is not a triangle")));
            }
            for v in *t {
                if seen.contains(v) {
                    return Err(Error::invalid(format!("triple {t:?} reuses vertex {v}")));
                }
                seen.insert(v);
            }
        }
        Ok(())
    }
}

/// Default node budget for the triangle packing search.
pub const DEFAULT_PACKING_BUDGET: u64 = 50_000_000;

/// A maximum packing of vertex-disjoint triangles, `I₃(G)` triangles.
pub fn max_independent_triangles(g: &Graph) -> Result<TrianglePacking> {
    max_independent_triangles_with_budget(g, DEFAULT_PACKING_BUDGET)
}

pub fn max_independent_triangles_with_budget(g: &Graph, budget: u64) -> Result<TrianglePacking> {
    let mut s = PackingSearch::new(g, None, budget);
    s.run()?;
    Ok(TrianglePacking {
        triangles: s.best.iter().map(|&i| s.tris[i]).collect(),
    })
}

/// `I₃(G)`.
pub fn independent_triangle_number(g: &Graph) -> Result<usize> {
    Ok(max_independent_triangles(g)?.len())
}

/// Whether `g` contains `k` vertex-disjoint triangles. Stops as soon as `k`
/// are found.
pub fn has_k_disjoint_triangles(g: &Graph, k: usize) -> Result<bool> {
    has_k_disjoint_triangles_with_budget(g, k, DEFAULT_PACKING_BUDGET)
}

pub fn has_k_disjoint_triangles_with_budget(g: &Graph, k: usize, budget: u64) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    if 3 * k > g.order() {
        return Ok(false);
    }
    let mut s = PackingSearch::new(g, Some(k), budget);
    s.run()?;
    Ok(s.best.len() >= k)
}

struct PackingSearch {
    tris: Vec<Triangle>,
    masks: Vec<VertexSet>,
    target: Option<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    counts: Vec<u32>,
}

impl PackingSearch {
    fn new(g: &Graph, target: Option<usize>, budget: u64) -> Self {
        let tris = enumerate_triangles(g);
        let masks = tris.iter().map(|t| VertexSet::from_slice(t)).collect();
        PackingSearch {
            tris,
            masks,
            target,
            best: Vec::new(),
            current: Vec::new(),
            nodes: 0,
            budget,
            counts: vec![0; g.order()],
        }
    }

    fn done(&self) -> bool {
        matches!(self.target, Some(k) if self.best.len() >= k)
    }

    fn run(&mut self) -> Result<()> {
        // Greedy lexicographic packing as the starting incumbent.
        let mut used = VertexSet::EMPTY;
        for (i, m) in self.masks.iter().enumerate() {
            if m.is_disjoint(&used) {
                used = used.union(m);
                self.best.push(i);
            }
        }
        if self.done() {
            self.best.truncate(self.target.unwrap_or(usize::MAX));
            return Ok(());
        }
        let all: Vec<usize> = (0..self.tris.len()).collect();
        self.branch(&all)
    }

    /// Whether `cands` provably cannot supply `need` more disjoint triangles.
    fn can_prune(&mut self, cands: &[usize], need: usize) -> bool {
        let covered = cands
            .iter()
            .fold(VertexSet::EMPTY, |acc, &i| acc.union(&self.masks[i]));
        if covered.len() / 3 < need {
            return true;
        }
        // Greedy vertex hitting set: every packed triangle owns a distinct
        // hitting vertex, so a hitting set smaller than `need` prunes.
        let mut alive: Vec<usize> = cands.to_vec();
        for _ in 1..need {
            if alive.is_empty() {
                break;
            }
            for &i in &alive {
                for &v in &self.tris[i] {
                    self.counts[v] += 1;
                }
            }
            let (mut pick, mut most) = (0, 0);
            for v in covered.iter() {
                if self.counts[v] > most {
                    most = self.counts[v];
                    pick = v;
                }
                self.counts[v] = 0;
            }
            alive.retain(|&i| !self.masks[i].contains(pick));
        }
        alive.is_empty()
    }

    fn branch(&mut self, cands: &[usize]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ResourceExhausted {
                what: "triangle packing search",
                nodes: self.nodes,
                budget: self.budget,
            });
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.done() || cands.is_empty() {
            return Ok(());
        }
        let need = match self.target {
            Some(k) => k - self.current.len(),
            None => self.best.len() + 1 - self.current.len(),
        };
        if self.can_prune(cands, need) {
            return Ok(());
        }
        // Branch on the least vertex still covered by a candidate: either one
        // of its triangles is packed, or it stays uncovered.
        let pivot = self.tris[cands[0]][0];
        let (with_pivot, without): (Vec<usize>, Vec<usize>) =
            cands.iter().partition(|&&i| self.masks[i].contains(pivot));
        for &t in &with_pivot {
            let rest: Vec<usize> = cands
                .iter()
                .copied()
                .filter(|&j| self.masks[j].is_disjoint(&self.masks[t]))
                .collect();
            self.current.push(t);
            self.branch(&rest)?;
            self.current.pop();
            if self.done() {
                return Ok(());
            }
        }
        self.branch(&without)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn brute_i3(g: &Graph) -> usize {
        let tris = enumerate_triangles(g);
        fn go(tris: &[Triangle], i: usize, used: VertexSet, k: usize) -> usize {
            if i == tris.len() {
                return k;
            }
            let m = VertexSet::from_slice(&tris[i]);
            let mut best = go(tris, i + 1, used, k);
            if m.is_disjoint(&used) {
                best = best.max(go(tris, i + 1, used.union(&m), k + 1));
            }
            best
        }
        go(&tris, 0, VertexSet::EMPTY, 0)
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(enumerate_triangles(&complete_graph(4).unwrap()).len(), 4);
        assert_eq!(
            enumerate_triangles(&complete_bipartite(3, 3).unwrap()).len(),
            0
        );
        let g = clique_join_bipartite(5, 1).unwrap();
        let tris = enumerate_triangles(&g);
        assert_eq!(tris, vec![[0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 4]]);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_matching(&complete_graph(4).unwrap()).len(), 2);
        assert_eq!(max_matching(&star_graph(5).unwrap()).len(), 1);
        let p = petersen_graph();
        let m = max_matching(&p);
        m.validate(&p).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(max_matching_bruteforce(&p).unwrap(), 5);
        assert_eq!(
            max_matching_bruteforce(&cycle_graph(5).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            max_matching_bruteforce(&cycle_graph(6).unwrap()).unwrap(),
            3
        );
        assert!(max_matching_bruteforce(&complete_graph(10).unwrap()).is_err());
    }

    #[test]
    fn blossom_needed() {
        // Two triangles joined by a path; greedy BFS without contraction
        // misses the perfect matching.
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (5, 7),
            ],
        )
        .unwrap();
        assert_eq!(max_matching(&g).len(), 4);
        assert_eq!(max_matching_bruteforce(&g).unwrap(), 4);
    }

    #[test]
    fn i3_examples() {
        assert_eq!(
            independent_triangle_number(&complete_graph(6).unwrap()).unwrap(),
            2
        );
        for n in 0..12 {
            assert_eq!(
                independent_triangle_number(&turan_graph(n, 2).unwrap()).unwrap(),
                0
            );
        }
        for t in 1..=4 {
            for n in 3 * t..=3 * t + 8 {
                let g = clique_join_bipartite(n, t).unwrap();
                let p = max_independent_triangles(&g).unwrap();
                p.validate(&g).unwrap();
                assert_eq!(p.len(), t, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn has_k_examples() {
        assert!(has_k_disjoint_triangles(&complete_graph(6).unwrap(), 2).unwrap());
        assert!(!has_k_disjoint_triangles(&complete_graph(5).unwrap(), 2).unwrap());
        let g = clique_join_bipartite(12, 2).unwrap();
        assert!(!has_k_disjoint_triangles(&g, 3).unwrap());
        assert_eq!(brute_i3(&g), 2);
    }

    #[test]
    fn budget_reports_exhaustion() {
        // Lexicographic greedy packs one triangle here; the optimum is two.
        let g = clique_join_bipartite(6, 2).unwrap();
        let err = max_independent_triangles_with_budget(&g, 1).unwrap_err();
        assert!(matches!(err, Error::ResourceExhausted { .. }));
    }

    #[test]
    fn common_neighborhood_examples() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(common_neighborhood(&k4, 0, 1).unwrap().to_vec(), vec![2, 3]);
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(
            common_neighborhood(&k33, 0, 2).unwrap().to_vec(),
            vec![3, 4, 5]
        );
        let c5 = cycle_graph(5).unwrap();
        assert!(common_neighborhood(&c5, 0, 1).unwrap().is_empty());
        assert!(common_neighborhood(&c5, 2, 2).is_err());
    }

    #[test]
    fn friendly_examples() {
        let k3 = complete_graph(3).unwrap();
        assert!(is_friendly(&k3, (0, 1), 2).unwrap());
        let p3 = path_graph(3).unwrap();
        assert!(!is_friendly(&p3, (0, 1), 2).unwrap());
        assert!(is_friendly(&p3, (0, 1), 1).is_err());
        assert!(is_friendly(&p3, (0, 2), 1).is_err());
    }
}
