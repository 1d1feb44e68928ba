//! Rainbow packing detection and the exact search, against brute force.

use std::collections::HashSet;

use proptest::prelude::*;

use rainbowlab::coloring::{
    build_lower_bound_coloring, extract_rainbow_subgraph, has_rainbow_packing, Color,
};
use rainbowlab::formulas::ar_formula;
use rainbowlab::search::{ar_exact, exists_avoiding_coloring, exists_avoiding_coloring_with_hint};
use rainbowlab::{Certification, EdgeColoring, SearchOptions};

fn edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Rainbow `kK_3` by trying every set of `k` disjoint triangles.
fn rainbow_oracle(c: &EdgeColoring, k: usize) -> bool {
    let n = c.order();
    let mut tris = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                tris.push([a, b, d]);
            }
        }
    }
    fn go(
        c: &EdgeColoring,
        tris: &[[usize; 3]],
        k: usize,
        used: &mut HashSet<usize>,
        colors: &mut Vec<Color>,
    ) -> bool {
        if k == 0 {
            let set: HashSet<_> = colors.iter().collect();
            return set.len() == colors.len();
        }
        for (i, t) in tris.iter().enumerate() {
            if t.iter().any(|v| used.contains(v)) {
                continue;
            }
            let [a, b, d] = *t;
            let cs = [c.color(a, b), c.color(a, d), c.color(b, d)];
            used.extend(t);
            colors.extend(cs);
            let hit = go(c, &tris[i + 1..], k - 1, used, colors);
            colors.truncate(colors.len() - 3);
            for v in t {
                used.remove(v);
            }
            if hit {
                return true;
            }
        }
        false
    }
    go(c, &tris, k, &mut HashSet::new(), &mut Vec::new())
}

fn coloring_strategy(max_n: usize) -> impl Strategy<Value = EdgeColoring> {
    (3..=max_n, 1usize..=12)
        .prop_flat_map(|(n, palette)| {
            prop::collection::vec(0..palette as Color, n * (n - 1) / 2)
                .prop_map(move |raw| (n, raw))
        })
        .prop_map(|(n, raw)| {
            // Relabel to 0..r in order of first appearance so the coloring is surjective.
            let mut seen: Vec<Color> = Vec::new();
            let colors = raw
                .iter()
                .map(|c| match seen.iter().position(|s| s == c) {
                    Some(i) => i as Color,
                    None => {
                        seen.push(*c);
                        (seen.len() - 1) as Color
                    }
                })
                .collect();
            EdgeColoring::new(n, colors).unwrap()
        })
}

fn merge(c: &EdgeColoring, a: Color, b: Color) -> EdgeColoring {
    let (lo, hi) = (a.min(b), a.max(b));
    let colors = c
        .colors()
        .iter()
        .map(|&x| match x {
            x if x == hi => lo,
            x if x > hi => x - 1,
            x => x,
        })
        .collect();
    EdgeColoring::new(c.order(), colors).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rainbow_search_matches_oracle(c in coloring_strategy(8), k in 1usize..=2) {
        let found = has_rainbow_packing(&c, k);
        if let Some(w) = &found {
            w.validate(&c).unwrap();
            prop_assert_eq!(w.packing.len(), k);
        }
        prop_assert_eq!(found.is_some(), rainbow_oracle(&c, k));
    }

    #[test]
    fn rainbow_subgraph_picks_one_edge_per_color(c in coloring_strategy(9)) {
        let g = extract_rainbow_subgraph(&c);
        prop_assert_eq!(g.order(), c.order());
        prop_assert_eq!(g.size(), c.num_colors());
        let colors: HashSet<Color> = g.edges().iter().map(|&(u, v)| c.color(u, v)).collect();
        prop_assert_eq!(colors.len(), c.num_colors());
    }

    #[test]
    fn merging_classes_preserves_avoidance(c in coloring_strategy(8), k in 1usize..=2, a in 0u32..12, b in 0u32..12) {
        let r = c.num_colors() as Color;
        prop_assume!(r >= 2 && has_rainbow_packing(&c, k).is_none());
        let (a, b) = (a % r, b % r);
        prop_assume!(a != b);
        let m = merge(&c, a, b);
        prop_assert_eq!(m.num_colors(), c.num_colors() - 1);
        prop_assert!(has_rainbow_packing(&m, k).is_none());
    }
}

/// Whether some surjective `r`-coloring of `K_n` avoids a rainbow `kK_3`,
/// by enumerating every coloring.
fn avoiding_exists_bruteforce(n: usize, r: usize, k: usize) -> bool {
    let m = edges(n).len();
    let mut colors = vec![0 as Color; m];
    loop {
        let used: HashSet<_> = colors.iter().collect();
        if used.len() == r {
            let c = EdgeColoring::new(n, colors.clone()).unwrap();
            if !rainbow_oracle(&c, k) {
                return true;
            }
        }
        // Odometer over r^m.
        let mut i = 0;
        loop {
            if i == m {
                return false;
            }
            colors[i] += 1;
            if (colors[i] as usize) < r {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn search_matches_bruteforce_on_small_cases() {
    let opts = SearchOptions::default();
    for (n, max_r) in [(3, 3), (4, 6), (5, 3)] {
        for r in 1..=max_r {
            let expected = avoiding_exists_bruteforce(n, r, 1);
            let got = exists_avoiding_coloring(n, r, 1, &opts).unwrap();
            match got {
                Certification::Present(c) => {
                    assert!(expected, "n={n} r={r}");
                    assert_eq!(c.num_colors(), r);
                    assert!(has_rainbow_packing(&c, 1).is_none());
                }
                Certification::Absent => assert!(!expected, "n={n} r={r}"),
                Certification::Exhausted { .. } => {
                    panic!("default budget exhausted at n={n} r={r}")
                }
            }
        }
    }
}

#[test]
fn known_triangle_values() {
    for n in 3..=6 {
        let report = ar_exact(n, 1, &SearchOptions::default()).unwrap();
        assert_eq!(report.ar, Some(n), "ar({n}, K_3)");
        assert!(report.witness_revalidated);
    }
}

#[test]
fn two_triangles_on_six_vertices() {
    // Computed by the search; the closed form gives 11 here but n = 6 is far
    // below the range where it is proven.
    let report = ar_exact(
        6,
        2,
        &SearchOptions {
            workers: 2,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.ar, Some(12));
    assert_eq!(ar_formula(6, 0).unwrap().value, 11);
    let w = report.witness.unwrap();
    assert_eq!(w.num_colors(), 11);
    assert!(!rainbow_oracle(&w, 2));
}

#[test]
fn witness_is_independent_of_worker_count() {
    let serial = ar_exact(6, 2, &SearchOptions::default()).unwrap();
    for workers in [2, 4] {
        let par = ar_exact(
            6,
            2,
            &SearchOptions {
                workers,
                split_depth: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(par.ar, serial.ar);
        assert_eq!(par.witness, serial.witness);
    }
}

#[test]
fn avoiding_witnesses_merge_downwards() {
    let opts = SearchOptions::default();
    for (n, k) in [(5, 1), (6, 1), (6, 2)] {
        let report = ar_exact(n, k, &opts).unwrap();
        let mut c = report.witness.unwrap();
        while c.num_colors() > 1 {
            c = merge(&c, 0, 1);
            assert!(has_rainbow_packing(&c, k).is_none());
        }
    }
}

#[test]
fn construction_is_accepted_as_hint() {
    let opts = SearchOptions {
        budget: 1,
        ..Default::default()
    };
    for t in 0..=2 {
        for n in 3 * t + 7..=(3 * t + 9).min(15) {
            let r = ar_formula(n as u64, t as u64).unwrap().value as usize - 1;
            let c = build_lower_bound_coloring(n, t).unwrap();
            let got = exists_avoiding_coloring_with_hint(n, r, t + 2, Some(&c), &opts).unwrap();
            assert!(matches!(got, Certification::Present(_)), "n={n} t={t}");
        }
    }
}

#[test]
fn search_never_denies_the_construction() {
    // Without the hint and with a small budget the search may run out, but
    // it must not claim that no avoiding coloring exists.
    let r = ar_formula(7, 0).unwrap().value as usize - 1;
    for budget in [1_000, 100_000, 2_000_000] {
        let opts = SearchOptions {
            budget,
            workers: 2,
            ..Default::default()
        };
        let got = exists_avoiding_coloring(7, r, 2, &opts).unwrap();
        assert!(!matches!(got, Certification::Absent), "budget {budget}");
    }
}

#[test]
fn checkpoint_resume_reaches_the_same_answer() {
    let dir = std::env::temp_dir().join(format!("rainbowlab-ck-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("search.ckpt");
    let _ = std::fs::remove_file(&path);
    let mut opts = SearchOptions {
        budget: 20_000,
        checkpoint: Some(path.clone()),
        resume: true,
        ..Default::default()
    };
    let mut rounds = 0;
    let report = loop {
        let report = ar_exact(6, 1, &opts).unwrap();
        rounds += 1;
        if report.complete {
            break report;
        }
        assert!(report.bracket[0] <= 6 && 6 <= report.bracket[1]);
        opts.budget = 20_000;
    };
    assert!(rounds > 1);
    assert_eq!(report.ar, Some(6));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construction_agrees_with_oracle() {
    for (n, t) in [(7, 0), (8, 0), (10, 1), (11, 1)] {
        let c = build_lower_bound_coloring(n, t).unwrap();
        assert!(!rainbow_oracle(&c, t + 2), "n={n} t={t}");
        assert!(rainbow_oracle(&c, t + 1), "n={n} t={t}");
        assert!(has_rainbow_packing(&c, t + 1).is_some());
    }
}
