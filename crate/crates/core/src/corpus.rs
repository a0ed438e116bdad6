//! Reproducible instance generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{maximal_cliques, CliqueComplex, Edge, Graph, Vertex};
use crate::scroll::{RawBlock, RawMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices named `0..n`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::numbered(n, pairs)
}

/// Chordal graph grown by adding simplicial vertices attached to part of a maximal clique.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let g = Graph::numbered(v, pairs.iter().copied());
        let cliques = maximal_cliques(&g);
        let clique = cliques.choose(rng).expect("a nonempty graph has a clique");
        let mut attach: Vec<Vertex> = clique.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if attach.is_empty() {
            attach.push(*clique.choose(rng).expect("cliques are nonempty"));
        }
        pairs.extend(attach.into_iter().map(|u| (u.0, v)));
    }
    Graph::numbered(n, pairs)
}

/// Knobs for [`random_extension`].
#[derive(Clone, Copy, Debug)]
pub struct ExtensionParams {
    /// Upper limit on base plus new vertices.
    pub max_vertices: usize,
    pub max_block_len: usize,
    /// Chance that a facet with a proper edge gets a matrix.
    pub density: f64,
}

impl Default for ExtensionParams {
    fn default() -> Self {
        ExtensionParams { max_vertices: 12, max_block_len: 2, density: 0.6 }
    }
}

/// Random valid scroll data on the facets of `cx`.
pub fn random_extension<R: Rng>(rng: &mut R, cx: &CliqueComplex, params: ExtensionParams) -> Vec<RawMatrix> {
    let g = cx.skeleton();
    let mut budget = params.max_vertices.saturating_sub(g.len());
    let mut fresh = 0usize;
    let mut out = Vec::new();
    let proper: Vec<Edge> = cx.proper_edges();
    for (f, facet) in cx.facets().iter().enumerate() {
        if budget == 0 || !rng.gen_bool(params.density) {
            continue;
        }
        let heads: Vec<Vertex> = facet
            .iter()
            .copied()
            .filter(|&x| facet.iter().any(|&y| y != x && proper.contains(&Edge::new(x, y))))
            .collect();
        let Some(&x0) = heads.choose(rng) else { continue };
        let mut targets: Vec<Vertex> = facet
            .iter()
            .copied()
            .filter(|&y| y != x0 && cx.proper_facet(Edge::new(x0, y)) == Some(f))
            .collect();
        targets.shuffle(rng);
        targets.truncate(rng.gen_range(1..=targets.len()));
        let mut blocks = Vec::new();
        for (j, &x) in targets.iter().enumerate() {
            let least = usize::from(j > 0);
            if least > budget {
                break;
            }
            let len = rng.gen_range(least..=params.max_block_len.max(least)).min(budget);
            budget -= len;
            let y = (0..len)
                .map(|_| {
                    fresh += 1;
                    format!("y{fresh}")
                })
                .collect();
            blocks.push(RawBlock { x: g.name(x).to_string(), y });
        }
        if blocks.iter().all(|b| b.y.is_empty()) {
            continue;
        }
        out.push(RawMatrix {
            facet: g.names_of(facet),
            x0: g.name(x0).to_string(),
            blocks,
        });
    }
    out
}

/// An n-cycle with every edge stretched by up to `max_y` new variables. Heads run
/// forward along the cycle except on the closing edge, which keeps the family orderable.
pub fn cycle_extension<R: Rng>(rng: &mut R, n: usize, max_y: usize) -> (Graph, Vec<RawMatrix>) {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let g = Graph::from_pairs(names.clone(), (0..n).map(|i| (Vertex(i), Vertex((i + 1) % n))))
        .expect("cycle is well formed");
    let mut raw = Vec::new();
    let mut fresh = 0;
    for i in 0..n {
        let len = rng.gen_range(0..=max_y);
        if len == 0 {
            continue;
        }
        let (head, tail) = if i + 1 == n { (0, n - 1) } else { (i, i + 1) };
        let y = (0..len)
            .map(|_| {
                fresh += 1;
                format!("y{fresh}")
            })
            .collect();
        raw.push(RawMatrix {
            facet: vec![names[i].clone(), names[(i + 1) % n].clone()],
            x0: names[head].clone(),
            blocks: vec![RawBlock { x: names[tail].clone(), y }],
        });
    }
    (g, raw)
}

/// Canonical adjacency code, invariant under relabeling.
pub fn canonical_code(g: &Graph) -> (usize, u64) {
    let n = g.len();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let adj: Vec<u64> = g
        .adjacency_masks()
        .expect("small graph")
        .into_iter()
        .map(|m| m as u64)
        .collect();
    // Colour refinement, then brute force inside colour classes.
    let mut colour: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colour[u]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        let stable = classes(&next) == classes(&colour);
        colour = next;
        if stable {
            break;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colour[v]);
    for v in order {
        match classes.last_mut() {
            Some(c) if colour[c[0]] == colour[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut placement = Vec::with_capacity(n);
    search_codes(&adj, &mut classes, 0, &mut placement, &mut best);
    (n, best)
}

fn search_codes(adj: &[u64], classes: &mut [Vec<usize>], at: usize, placement: &mut Vec<usize>, best: &mut u64) {
    if at == classes.len() {
        let n = placement.len();
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[placement[i]] >> placement[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let mut members = classes[at].clone();
    permute(&mut members, 0, &mut |perm| {
        let before = placement.len();
        placement.extend_from_slice(perm);
        search_codes(adj, classes, at + 1, placement, best);
        placement.truncate(before);
    });
}

fn permute(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Every connected graph on `1..=max_n` vertices, one per isomorphism class.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    let mut layer = vec![Graph::numbered(1, [])];
    for n in 1..=max_n {
        if n > 1 {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in &layer {
                for mask in 1u32..1 << (n - 1) {
                    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.ends().0 .0, e.ends().1 .0)).collect();
                    pairs.extend((0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1)));
                    let h = Graph::numbered(n, pairs);
                    if seen.insert(canonical_code(&h)) {
                        next.push(h);
                    }
                }
            }
            layer = next;
        }
        all.extend(layer.iter().cloned());
    }
    all
}
