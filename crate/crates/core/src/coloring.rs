//! Edge-colourings of `K_n`, the rainbow-avoiding extremal construction and
//! rainbow triangle-packing detection.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::binom2;
use crate::graph::{clique_join_bipartite, Graph, GraphBuilder, VertexSet, MAX_VERTICES};
use crate::packing::{Triangle, TrianglePacking};

pub type Color = u32;

/// Position of the pair `{u, v}` in the lexicographic order of `K_n`'s edges.
#[inline]
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Edges of `K_n` in lexicographic order.
pub fn complete_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// A surjective colouring of the edges of `K_n` with colours `0..r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct EdgeColoring {
    n: usize,
    r: usize,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// `colors[i]` is the colour of the `i`-th edge in lexicographic order.
    /// The colour count is `max + 1`; every colour below it must be used.
    pub fn new(n: usize, colors: Vec<Color>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!("K_{n} exceeds the supported order")));
        }
        let m = binom2(n as u64) as usize;
        if colors.len() != m {
            return Err(Error::invalid(format!(
                "K_{n} has {m} edges but {} colours were given",
                colors.len()
            )));
        }
        let r = colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut seen = vec![false; r];
        for &c in &colors {
            seen[c as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::invalid(format!(
                "colouring is not surjective: colour {missing} of 0..{r} is unused"
            )));
        }
        Ok(EdgeColoring { n, r, colors })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let colors = complete_edges(n).map(|(u, v)| f(u, v)).collect();
        Self::new(n, colors)
    }

    /// Every edge its own colour.
    pub fn all_distinct(n: usize) -> Result<Self> {
        let m = binom2(n as u64) as Color;
        Self::new(n, (0..m).collect())
    }

    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::new(n, vec![0; binom2(n as u64) as usize])
    }

    /// Order of the host complete graph.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of colours, all of them used.
    pub fn num_colors(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v);
        self.colors[edge_index(self.n, u, v)]
    }

    /// Colours in lexicographic edge order.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn triangle_colors(&self, [a, b, c]: Triangle) -> [Color; 3] {
        [self.color(a, b), self.color(a, c), self.color(b, c)]
    }

    pub fn is_rainbow_triangle(&self, t: Triangle) -> bool {
        let [x, y, z] = self.triangle_colors(t);
        x != y && x != z && y != z
    }

    /// Edges grouped by colour; each class in lexicographic order.
    pub fn color_classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut classes = vec![Vec::new(); self.r];
        for ((u, v), &c) in complete_edges(self.n).zip(&self.colors) {
            classes[c as usize].push((u, v));
        }
        classes
    }

    /// Renders the text exchange format: a `n r` header, then `u v colour`
    /// for every edge in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(12 * self.colors.len() + 16);
        writeln!(s, "{} {}", self.n, self.r).unwrap();
        for ((u, v), c) in complete_edges(self.n).zip(&self.colors) {
            writeln!(s, "{u} {v} {c}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::malformed("empty colouring file"))?;
        let head = parse_fields::<2>(header, 1)?;
        let (n, r) = (head[0], head[1]);
        if n > MAX_VERTICES {
            return Err(Error::malformed(format!(
                "order {n} exceeds the supported maximum"
            )));
        }
        let m = binom2(n as u64) as usize;
        let mut colors = vec![None; m];
        for (i, line) in lines {
            let [u, v, c] = parse_fields::<3>(line, i + 1)?;
            if u >= v || v >= n {
                return Err(Error::malformed(format!(
                    "line {}: pair ({u},{v}) is not an edge of K_{n} with u < v",
                    i + 1
                )));
            }
            if c >= r {
                return Err(Error::malformed(format!(
                    "line {}: colour {c} outside 0..{r}",
                    i + 1
                )));
            }
            let slot = &mut colors[edge_index(n, u, v)];
            if slot.is_some() {
                return Err(Error::malformed(format!(
                    "line {}: edge ({u},{v}) repeated",
                    i + 1
                )));
            }
            *slot = Some(c as Color);
        }
        let colors: Vec<Color> = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(i))
            .collect::<std::result::Result<_, _>>()
            .map_err(|i| {
                let (u, v) = complete_edges(n).nth(i).unwrap();
                Error::malformed(format!("edge ({u},{v}) has no colour"))
            })?;
        let col = Self::new(n, colors).map_err(|e| Error::malformed(e.to_string()))?;
        if col.r != r {
            return Err(Error::malformed(format!(
                "header declares {r} colours but {} are used",
                col.r
            )));
        }
        Ok(col)
    }
}

fn parse_fields<const N: usize>(line: &str, lineno: usize) -> Result<[usize; N]> {
    let mut out = [0; N];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        *slot = it
            .next()
            .ok_or_else(|| Error::malformed(format!("line {lineno}: expected {N} fields")))?
            .parse()
            .map_err(|e| Error::malformed(format!("line {lineno}: {e}")))?;
    }
    if it.next().is_some() {
        return Err(Error::malformed(format!(
            "line {lineno}: expected {N} fields"
        )));
    }
    Ok(out)
}

/// The colouring that avoids a rainbow `(t+2)K_3` with `moon_ex(n,t) + 1`
/// colours: the edges of `K_t ∨ T_2(n-t)` get the distinct colours
/// `1..=moon_ex(n,t)` in lexicographic edge order, every other edge gets 0.
pub fn build_lower_bound_coloring(n: usize, t: usize) -> Result<EdgeColoring> {
    if n <= 3 * t + 6 {
        return Err(Error::invalid(format!(
            "lower-bound construction needs n > 3t + 6, got n = {n}, t = {t}"
        )));
    }
    let host = clique_join_bipartite(n, t)?;
    let mut next = 0;
    EdgeColoring::from_fn(n, |u, v| {
        if host.has_edge(u, v) {
            next += 1;
            next
        } else {
            0
        }
    })
}

/// A rainbow packing: vertex-disjoint triangles whose `3k` edge colours are
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RainbowWitness {
    pub packing: TrianglePacking,
    pub colors: Vec<Color>,
}

impl RainbowWitness {
    pub fn validate(&self, coloring: &EdgeColoring) -> Result<()> {
        let host = crate::graph::complete_graph(coloring.order())?;
        self.packing.validate(&host)?;
        let mut colors: Vec<Color> = self
            .packing
            .triangles
            .iter()
            .flat_map(|&t| coloring.triangle_colors(t))
            .collect();
        if colors != self.colors {
            return Err(Error::invalid("witness colours do not match the colouring"));
        }
        colors.sort_unstable();
        if colors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("witness repeats a colour"));
        }
        Ok(())
    }
}

/// Finds `k` vertex-disjoint triangles with `3k` distinct colours, returning
/// the lexicographically least such packing.
pub fn has_rainbow_packing(coloring: &EdgeColoring, k: usize) -> Option<RainbowWitness> {
    let n = coloring.order();
    if k == 0 {
        return Some(RainbowWitness {
            packing: TrianglePacking::default(),
            colors: Vec::new(),
        });
    }
    if 3 * k > n {
        return None;
    }
    let mut tris = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if coloring.is_rainbow_triangle([a, b, c]) {
                    tris.push([a, b, c]);
                }
            }
        }
    }
    let mut s = RainbowSearch {
        masks: tris.iter().map(|t| VertexSet::from_slice(t)).collect(),
        cols: tris.iter().map(|&t| coloring.triangle_colors(t)).collect(),
        tris,
        k,
        chosen: Vec::with_capacity(k),
        vertex_counts: vec![0; n],
        color_counts: vec![0; coloring.num_colors()],
    };
    let all: Vec<u32> = (0..s.tris.len() as u32).collect();
    if !s.search(&all) {
        return None;
    }
    let triangles: Vec<Triangle> = s.chosen.iter().map(|&i| s.tris[i as usize]).collect();
    let colors = triangles
        .iter()
        .flat_map(|&t| coloring.triangle_colors(t))
        .collect();
    Some(RainbowWitness {
        packing: TrianglePacking { triangles },
        colors,
    })
}

struct RainbowSearch {
    tris: Vec<Triangle>,
    masks: Vec<VertexSet>,
    cols: Vec<[Color; 3]>,
    k: usize,
    chosen: Vec<u32>,
    vertex_counts: Vec<u32>,
    color_counts: Vec<u32>,
}

impl RainbowSearch {
    fn compatible(&self, a: usize, b: usize) -> bool {
        self.masks[a].is_disjoint(&self.masks[b])
            && self.cols[a].iter().all(|c| !self.cols[b].contains(c))
    }

    /// Every vertex and every colour can serve at most one triangle of the
    /// packing, so a family of such groups covering all candidates bounds
    /// the packing size. The cover is built greedily and only needs to beat
    /// `need`.
    fn cover_bound_below(&mut self, cands: &[u32], need: usize) -> bool {
        let mut alive: Vec<u32> = cands.to_vec();
        for _ in 1..need {
            if alive.is_empty() {
                break;
            }
            for &i in &alive {
                let i = i as usize;
                for &v in &self.tris[i] {
                    self.vertex_counts[v] += 1;
                }
                for &c in &self.cols[i] {
                    self.color_counts[c as usize] += 1;
                }
            }
            let (mut best_v, mut best_vc) = (0, 0);
            let (mut best_c, mut best_cc) = (0, 0);
            for &i in &alive {
                let i = i as usize;
                for &v in &self.tris[i] {
                    if self.vertex_counts[v] > best_vc {
                        best_vc = self.vertex_counts[v];
                        best_v = v;
                    }
                }
                for &c in &self.cols[i] {
                    if self.color_counts[c as usize] > best_cc {
                        best_cc = self.color_counts[c as usize];
                        best_c = c;
                    }
                }
            }
            for &i in &alive {
                let i = i as usize;
                for &v in &self.tris[i] {
                    self.vertex_counts[v] = 0;
                }
                for &c in &self.cols[i] {
                    self.color_counts[c as usize] = 0;
                }
            }
            if best_cc > best_vc {
                alive.retain(|&i| !self.cols[i as usize].contains(&best_c));
            } else {
                alive.retain(|&i| !self.masks[i as usize].contains(best_v));
            }
        }
        alive.is_empty()
    }

    fn search(&mut self, cands: &[u32]) -> bool {
        let need = self.k - self.chosen.len();
        if need == 0 {
            return true;
        }
        if cands.len() < need {
            return false;
        }
        let covered = cands.iter().fold(VertexSet::EMPTY, |acc, &i| {
            acc.union(&self.masks[i as usize])
        });
        if covered.len() < 3 * need {
            return false;
        }
        if need > 1 && self.cover_bound_below(cands, need) {
            return false;
        }
        for (pos, &t) in cands.iter().enumerate() {
            if cands.len() - pos < need {
                break;
            }
            let rest: Vec<u32> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&j| self.compatible(t as usize, j as usize))
                .collect();
            self.chosen.push(t);
            if self.search(&rest) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// A subgraph with one edge per colour class, the lexicographically least
/// edge of each class.
pub fn extract_rainbow_subgraph(coloring: &EdgeColoring) -> Graph {
    let mut b = GraphBuilder::new(coloring.order()).expect("order validated by colouring");
    let mut seen = vec![false; coloring.num_colors()];
    for ((u, v), &c) in complete_edges(coloring.order()).zip(coloring.colors()) {
        if !seen[c as usize] {
            seen[c as usize] = true;
            b.add_edge(u, v).expect("edge of K_n");
        }
    }
    b.build()
}

/// `c(Q)` with multiplicities: how often each colour appears on `edges`.
pub fn color_multiset(
    coloring: &EdgeColoring,
    edges: &[(usize, usize)],
) -> Result<BTreeMap<Color, usize>> {
    let mut out = BTreeMap::new();
    for &(u, v) in edges {
        if u == v || u >= coloring.order() || v >= coloring.order() {
            return Err(Error::invalid(format!(
                "({u},{v}) is not an edge of K_{}",
                coloring.order()
            )));
        }
        *out.entry(coloring.color(u, v)).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::moon_ex;
    use crate::graph::complete_graph;
    use crate::iso::are_isomorphic;

    #[test]
    fn edge_index_is_lexicographic() {
        for n in 0..12 {
            for (i, (u, v)) in complete_edges(n).enumerate() {
                assert_eq!(edge_index(n, u, v), i);
                assert_eq!(edge_index(n, v, u), i);
            }
        }
    }

    #[test]
    fn rejects_non_surjective() {
        assert!(EdgeColoring::new(3, vec![0, 2, 2]).is_err());
        assert!(EdgeColoring::new(3, vec![0, 1]).is_err());
        assert_eq!(EdgeColoring::new(3, vec![0, 1, 1]).unwrap().num_colors(), 2);
        assert_eq!(EdgeColoring::new(1, vec![]).unwrap().num_colors(), 0);
    }

    #[test]
    fn construction_color_counts() {
        let c = build_lower_bound_coloring(10, 0).unwrap();
        assert_eq!(c.num_colors(), 26);
        assert_eq!(c.color_classes()[0].len(), 20);
        let c = build_lower_bound_coloring(10, 1).unwrap();
        assert_eq!(c.num_colors(), 30);
        assert!(build_lower_bound_coloring(9, 1).is_err());
        assert!(build_lower_bound_coloring(6, 0).is_err());
    }

    #[test]
    fn construction_avoids_rainbow_t_plus_2() {
        for t in 0..=2 {
            for n in 3 * t + 7..=3 * t + 12 {
                let c = build_lower_bound_coloring(n, t).unwrap();
                assert_eq!(
                    c.num_colors() as u64,
                    moon_ex(n as u64, t as u64).unwrap() + 1
                );
                assert!(has_rainbow_packing(&c, t + 2).is_none(), "n={n} t={t}");
                let w = has_rainbow_packing(&c, t + 1).expect("t+1 rainbow triangles");
                w.validate(&c).unwrap();
            }
        }
        let c = build_lower_bound_coloring(20, 1).unwrap();
        assert!(has_rainbow_packing(&c, 3).is_none());
    }

    #[test]
    fn rainbow_examples() {
        let all = EdgeColoring::all_distinct(9).unwrap();
        let w = has_rainbow_packing(&all, 3).unwrap();
        w.validate(&all).unwrap();
        assert_eq!(w.packing.triangles, vec![[0, 1, 2], [3, 4, 5], [6, 7, 8]]);
        let mono = EdgeColoring::monochromatic(9).unwrap();
        assert!(has_rainbow_packing(&mono, 1).is_none());
        assert!(has_rainbow_packing(&mono, 0).is_some());
        assert!(has_rainbow_packing(&all, 4).is_none());
    }

    #[test]
    fn rainbow_subgraph_examples() {
        let all = EdgeColoring::all_distinct(5).unwrap();
        assert_eq!(extract_rainbow_subgraph(&all), complete_graph(5).unwrap());
        let mono = EdgeColoring::monochromatic(5).unwrap();
        assert_eq!(
            extract_rainbow_subgraph(&mono),
            Graph::from_edges(5, &[(0, 1)]).unwrap()
        );
        for (n, t) in [(10, 0), (11, 1), (14, 2)] {
            let c = build_lower_bound_coloring(n, t).unwrap();
            let g = extract_rainbow_subgraph(&c);
            assert_eq!(g.size(), c.num_colors());
            let host = clique_join_bipartite(n, t).unwrap();
            let extra: Vec<_> = g
                .edges()
                .into_iter()
                .filter(|&(u, v)| !host.has_edge(u, v))
                .collect();
            assert_eq!(extra.len(), 1);
            assert!(host.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
            if n <= 10 {
                let expected = host.with_edge(extra[0].0, extra[0].1).unwrap();
                assert!(are_isomorphic(&g, &expected).unwrap());
            }
        }
    }

    #[test]
    fn multiset_examples() {
        let mono = EdgeColoring::monochromatic(5).unwrap();
        let m = color_multiset(&mono, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(0, 3)]);
        assert!(color_multiset(&mono, &[]).unwrap().is_empty());
        assert!(color_multiset(&mono, &[(2, 2)]).is_err());

        let (n, t) = (13, 2);
        let c = build_lower_bound_coloring(n, t).unwrap();
        let host = clique_join_bipartite(n, t).unwrap();
        let m = color_multiset(&c, &host.edges()).unwrap();
        let k = moon_ex(n as u64, t as u64).unwrap() as u32;
        assert_eq!(
            m.keys().copied().collect::<Vec<_>>(),
            (1..=k).collect::<Vec<_>>()
        );
        assert!(m.values().all(|&x| x == 1));
    }

    #[test]
    fn text_format_round_trip() {
        let c = build_lower_bound_coloring(8, 0).unwrap();
        let s = c.to_text();
        assert!(s.starts_with("8 17\n0 1 0\n"));
        assert_eq!(EdgeColoring::from_text(&s).unwrap(), c);
    }

    #[test]
    fn text_format_errors() {
        assert!(EdgeColoring::from_text("").is_err());
        assert!(EdgeColoring::from_text("3 2\n0 1 0\n0 2 1\n").is_err()); // missing edge
        assert!(EdgeColoring::from_text("3 2\n0 1 0\n0 2 1\n1 2 1\n1 2 0\n").is_err());
        assert!(EdgeColoring::from_text("3 2\n0 1 0\n0 2 1\n2 1 1\n").is_err());
        assert!(EdgeColoring::from_text("3 3\n0 1 0\n0 2 1\n1 2 1\n").is_err());
        assert!(EdgeColoring::from_text("3 2\n0 1 0\n0 2 5\n1 2 1\n").is_err());
        assert!(EdgeColoring::from_text("3 2\n0 1 0\n0 2 1\n1 2 1\n").is_ok());
    }
}
