//! Isomorphism testing for small graphs by degree screening followed by a
//! backtracking permutation search.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on graph order for [`are_isomorphic`].
pub const DEFAULT_ISO_BOUND: usize = 10;

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    are_isomorphic_bounded(g, h, DEFAULT_ISO_BOUND)
}

/// Like [`are_isomorphic`] with an explicit order cap.
pub fn are_isomorphic_bounded(g: &Graph, h: &Graph, bound: usize) -> Result<bool> {
    if g.order() > bound || h.order() > bound {
        return Err(Error::invalid(format!(
            "isomorphism test limited to graphs with at most {bound} vertices"
        )));
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// An adjacency-preserving bijection `map` with `g.has_edge(u,v) ==
/// h.has_edge(map[u], map[v])`, if one exists. No size cap; callers are
/// expected to keep graphs small.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return None;
    }
    let dg = g.degrees();
    let dh = h.degrees();
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    // Map high-degree vertices first; they constrain the rest the most.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(dg[v]), v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &dg, &dh, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    dg: &[usize],
    dh: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for x in 0..h.order() {
        if used[x] || dh[x] != dg[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g.has_edge(u, w) == h.has_edge(x, map[w]));
        if !consistent {
            continue;
        }
        map[u] = x;
        used[x] = true;
        if extend(g, h, dg, dh, order, depth + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[u] = usize::MAX;
    }
    false
}
