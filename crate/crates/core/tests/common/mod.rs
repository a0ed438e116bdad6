#![allow(dead_code)]

use std::collections::VecDeque;

use rand::Rng;
use scrollex::corpus::{cycle_extension, random_chordal, random_extension, random_graph, rng, ExtensionParams};
use scrollex::fixtures::{glued, hex_ext, raw_matrix, spiral, spiral_untwisted};
use scrollex::{
    validate_extension, CliqueComplex, Cycle, Edge, ExtensionSpec, Graph, RawBlock, RawMatrix, ScrollMatrix, Vertex,
};

pub struct Case {
    pub label: String,
    pub ext: ExtensionSpec,
}

fn case(label: impl Into<String>, g: Graph, raw: &[RawMatrix]) -> Option<Case> {
    let ext = validate_extension(&CliqueComplex::new(g), raw).expect("generated data is valid");
    (!ext.matrices().is_empty()).then(|| Case { label: label.into(), ext })
}

/// A cycle whose every edge, the closing one included, carries a matrix headed at its first end.
pub fn twisted_cycle<R: Rng>(r: &mut R, n: usize) -> (Graph, Vec<RawMatrix>) {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let g = Graph::from_pairs(names.clone(), (0..n).map(|i| (Vertex(i), Vertex((i + 1) % n)))).unwrap();
    let raw = (0..n)
        .map(|i| {
            let len = r.gen_range(1..=2);
            RawMatrix {
                facet: vec![names[i].clone(), names[(i + 1) % n].clone()],
                x0: names[i].clone(),
                blocks: vec![RawBlock { x: names[(i + 1) % n].clone(), y: (0..len).map(|k| format!("y{i}_{k}")).collect() }],
            }
        })
        .collect();
    (g, raw)
}

/// Shipped fixtures plus seeded random extensions of several shapes.
pub fn extension_corpus() -> Vec<Case> {
    let mut out = vec![
        Case { label: "glued".into(), ext: glued() },
        Case { label: "hex".into(), ext: hex_ext() },
        Case { label: "spiral".into(), ext: spiral() },
        Case { label: "spiral-untwisted".into(), ext: spiral_untwisted() },
    ];
    for seed in 0..160u64 {
        let mut r = rng(1000 + seed);
        let n = r.gen_range(4..=8);
        let p = [0.35, 0.5, 0.65][seed as usize % 3];
        let g = random_graph(&mut r, n, p);
        let raw = random_extension(&mut r, &CliqueComplex::new(g.clone()), ExtensionParams::default());
        out.extend(case(format!("random-{seed}"), g, &raw));
    }
    for seed in 0..60u64 {
        let mut r = rng(2000 + seed);
        let n = r.gen_range(4..=8);
        let g = random_chordal(&mut r, n);
        let raw = random_extension(&mut r, &CliqueComplex::new(g.clone()), ExtensionParams::default());
        out.extend(case(format!("chordal-{seed}"), g, &raw));
    }
    for seed in 0..60u64 {
        let mut r = rng(3000 + seed);
        let n = r.gen_range(4..=8);
        let (g, raw) = cycle_extension(&mut r, n, 3);
        out.extend(case(format!("cycle-{seed}"), g, &raw));
    }
    for seed in 0..12u64 {
        let mut r = rng(4000 + seed);
        let n = r.gen_range(4..=6);
        let (g, raw) = twisted_cycle(&mut r, n);
        out.extend(case(format!("twisted-{seed}"), g, &raw));
    }
    // Triangle-square glueings with long and short blocks, beyond the random generator's block lengths.
    for (k, (a, b)) in [(1usize, 1usize), (1, 3), (2, 2), (3, 1), (3, 3)].into_iter().enumerate() {
        let g = scrollex::fixtures::glued_graph();
        let ya: Vec<String> = (0..a).map(|i| format!("p{i}")).collect();
        let yb: Vec<String> = (0..b).map(|i| format!("q{i}")).collect();
        let ya: Vec<&str> = ya.iter().map(String::as_str).collect();
        let yb: Vec<&str> = yb.iter().map(String::as_str).collect();
        let raw = [raw_matrix(&["a", "b", "c"], "a", &[("c", &ya)]), raw_matrix(&["d", "e"], "e", &[("d", &yb)])];
        out.extend(case(format!("glued-{k}"), g, &raw));
    }
    out
}

pub fn connected_mask(adj: &[u128], mask: u128) -> bool {
    if mask == 0 {
        return true;
    }
    let mut seen = 1u128 << mask.trailing_zeros();
    loop {
        let mut grow = seen;
        let mut rest = seen;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow |= adj[v] & mask;
        }
        if grow == seen {
            return seen == mask;
        }
        seen = grow;
    }
}

/// Vertex sets of size at least four inducing a cycle, by exhaustive search.
pub fn induced_cycles(g: &Graph) -> Vec<u128> {
    let adj = g.adjacency_masks().unwrap();
    let n = g.len();
    assert!(n <= 16);
    (0u128..1 << n)
        .filter(|&m| m.count_ones() >= 4)
        .filter(|&m| {
            (0..n).filter(|&v| m >> v & 1 == 1).all(|v| (adj[v] & m).count_ones() == 2) && connected_mask(&adj, m)
        })
        .collect()
}

/// Maximal cliques by exhaustive search.
pub fn brute_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    let adj = g.adjacency_masks().unwrap();
    let n = g.len();
    let is_clique = |m: u128| (0..n).filter(|&v| m >> v & 1 == 1).all(|v| (adj[v] | 1 << v) & m == m);
    let cliques: Vec<u128> = (1u128..1 << n).filter(|&m| is_clique(m)).collect();
    let mut out: Vec<Vec<Vertex>> = cliques
        .iter()
        .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).map(Vertex).collect())
        .collect();
    out.sort();
    out
}

/// The defining conditions of an admissibly ordered sequence, read off the matrix rows.
pub fn admissibly_ordered(ms: &[&ScrollMatrix], with_second_condition: bool) -> bool {
    let tops: Vec<Vec<Vertex>> = ms.iter().map(|m| m.top_row()).collect();
    let bottoms: Vec<Vec<Vertex>> = ms.iter().map(|m| m.bottom_row()).collect();
    let k = ms.len();
    (0..k).all(|i| {
        let h = tops[i][0];
        let first = (i + 1..k).all(|j| !bottoms[j].contains(&h));
        let second = with_second_condition
            && (i + 1..k).any(|j| {
                h == bottoms[j][0]
                    && (0..i).any(|i2| tops[i2][0] == tops[j][0] && (0..i2).all(|j2| h != tops[j2][0]))
            });
        first || second
    })
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Some admissible order by trying all of them.
pub fn brute_order(ms: &[ScrollMatrix], with_second_condition: bool) -> Option<Vec<usize>> {
    permutations(ms.len()).into_iter().find(|p| {
        let seq: Vec<&ScrollMatrix> = p.iter().map(|&i| &ms[i]).collect();
        admissibly_ordered(&seq, with_second_condition)
    })
}

/// Columns under the interleaved permutation: sorted by position inside the block, then block.
pub fn interleaved_columns(m: &ScrollMatrix) -> Vec<(Vertex, Vertex)> {
    let top = m.top_row();
    let bottom = m.bottom_row();
    let mut keyed = vec![((0usize, 0usize), (top[0], bottom[0]))];
    let mut c = 1;
    for (j, b) in m.blocks.iter().enumerate() {
        for i in 0..b.y.len() {
            keyed.push(((i + 1, j), (top[c], bottom[c])));
            c += 1;
        }
    }
    keyed.sort_by_key(|(k, _)| *k);
    keyed.into_iter().map(|(_, col)| col).collect()
}

/// The extended graph minus every (top of an earlier column, bottom of a later one) pair.
pub fn initial_graph_oracle(ext: &ExtensionSpec) -> (Graph, Vec<Edge>) {
    let mut deleted = Vec::new();
    for m in ext.matrices() {
        let cols = interleaved_columns(m);
        for i in 0..cols.len() {
            for k in i + 1..cols.len() {
                assert_ne!(cols[i].0, cols[k].1, "diagonal pair is a loop");
                deleted.push(Edge::new(cols[i].0, cols[k].1));
            }
        }
    }
    deleted.sort();
    deleted.dedup();
    (ext.graph().without_edges(&deleted), deleted)
}

/// Shortest local substitution of `e` on `cycle`, by breadth-first search. `None` if there is none.
pub fn bfs_substitution(initial: &Graph, fbar: &[Vertex], cycle: &Cycle, e: Edge) -> Option<usize> {
    if initial.contains_edge(e) {
        return Some(1);
    }
    let (a, b) = e.ends();
    let rest: Vec<Vertex> = cycle.vertices().iter().copied().filter(|&v| v != a && v != b).collect();
    let allowed = |w: Vertex| {
        w == b
            || (fbar.contains(&w) && !cycle.contains(w) && rest.iter().all(|&x| !initial.has_edge(x, w)))
    };
    let mut dist = vec![usize::MAX; initial.len()];
    dist[a.0] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for w in initial.neighbors(u) {
            if dist[w.0] == usize::MAX && allowed(w) && !(u == a && w == b) {
                dist[w.0] = dist[u.0] + 1;
                if w == b {
                    return Some(dist[w.0]);
                }
                queue.push_back(w);
            }
        }
    }
    None
}
