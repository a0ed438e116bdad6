//! Reduced simplicial homology, Stanley–Reisner ideals and graded Betti tables.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{is_chordal, shortest_chordless_cycles, Edge, Graph, Vertex, DEFAULT_CYCLE_CAP};
use crate::linalg::{rank, FieldSpec};

/// Default vertex guard for exhaustive Betti sweeps.
pub const DEFAULT_MAX_VERTICES: usize = 20;

/// Faces stored as bit masks, grouped by cardinality.
struct Chains {
    by_size: Vec<Vec<u128>>,
}

impl Chains {
    fn from_faces(mut faces: Vec<u128>) -> Self {
        faces.push(0);
        faces.sort_unstable();
        faces.dedup();
        let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut by_size = vec![Vec::new(); top + 1];
        for f in faces {
            by_size[f.count_ones() as usize].push(f);
        }
        Chains { by_size }
    }

    /// Rank of the boundary map from faces of size `s` to faces of size `s - 1`.
    fn boundary_rank(&self, s: usize, field: FieldSpec) -> usize {
        if s == 0 || s >= self.by_size.len() {
            return 0;
        }
        let (lower, upper) = (&self.by_size[s - 1], &self.by_size[s]);
        if lower.is_empty() || upper.is_empty() {
            return 0;
        }
        let index: HashMap<u128, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
        for (col, &face) in upper.iter().enumerate() {
            let mut rest = face;
            let mut r = 0;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if let Some(&row) = index.get(&(face ^ bit)) {
                    rows[row][col] = if r % 2 == 0 { 1 } else { -1 };
                }
                r += 1;
            }
        }
        rank(rows, field)
    }

    /// `out[s]` is the dimension of reduced homology in degree `s - 1`.
    fn reduced_betti(&self, field: FieldSpec) -> Vec<usize> {
        let sizes = self.by_size.len();
        let ranks: Vec<usize> = (0..=sizes).map(|s| self.boundary_rank(s, field)).collect();
        (0..sizes)
            .map(|s| self.by_size[s].len() - ranks[s] - ranks[s + 1])
            .collect()
    }
}

/// dim H̃_d(Δ; k) for a complex given by its faces. The empty face is always included.
pub fn reduced_homology_rank(faces: &[Vec<usize>], d: i64, field: FieldSpec) -> Result<usize> {
    if d < -1 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let mut labels: Vec<usize> = faces.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > 128 {
        return Err(Error::GuardExceeded { vertices: labels.len(), guard: 128 });
    }
    let masks = faces
        .iter()
        .map(|f| {
            f.iter()
                .map(|v| 1u128 << labels.binary_search(v).expect("label was collected"))
                .fold(0, |m, b| m | b)
        })
        .collect();
    let betti = Chains::from_faces(masks).reduced_betti(field);
    Ok(betti.get((d + 1) as usize).copied().unwrap_or(0))
}

/// All cliques (including the empty one) of the graph with adjacency `adj` inside `within`.
fn cliques_within(adj: &[u128], within: u128) -> Vec<u128> {
    let mut out = vec![0u128];
    let mut frontier: Vec<(u128, u128)> = vec![(0, within)];
    while let Some((face, candidates)) = frontier.pop() {
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = face | (1u128 << v);
            out.push(next);
            frontier.push((next, rest & adj[v]));
        }
    }
    out
}

/// Reduced Betti numbers of the clique complex on the vertex set `mask`; index `s` is degree `s - 1`.
fn clique_reduced_betti(adj: &[u128], mask: u128, field: FieldSpec) -> Vec<usize> {
    Chains::from_faces(cliques_within(adj, mask)).reduced_betti(field)
}

fn masks_of(g: &Graph) -> Result<Vec<u128>> {
    g.adjacency_masks()
        .ok_or(Error::GuardExceeded { vertices: g.len(), guard: 128 })
}

/// dim H̃_d of the clique complex of the subgraph induced on `sigma`.
pub fn clique_homology_rank(g: &Graph, sigma: &[Vertex], d: i64, field: FieldSpec) -> Result<usize> {
    if d < -1 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let adj = masks_of(g)?;
    let mask = subset_mask(g, sigma)?;
    Ok(clique_reduced_betti(&adj, mask, field).get((d + 1) as usize).copied().unwrap_or(0))
}

fn subset_mask(g: &Graph, sigma: &[Vertex]) -> Result<u128> {
    sigma.iter().try_fold(0u128, |m, v| {
        if v.0 >= g.len() {
            Err(Error::UnknownVertex { name: format!("#{}", v.0) })
        } else {
            Ok(m | (1u128 << v.0))
        }
    })
}

/// The minimal monomial generators of the Stanley–Reisner ideal of the clique complex.
pub fn stanley_reisner_generators(g: &Graph) -> Vec<Edge> {
    g.non_edges()
}

/// β_{i,σ} of the Stanley–Reisner ideal of the clique complex of `g`.
pub fn hochster_betti(g: &Graph, i: usize, sigma: &[Vertex], field: FieldSpec) -> Result<usize> {
    let d = sigma.len() as i64 - i as i64 - 2;
    if d < -1 {
        return Ok(0);
    }
    clique_homology_rank(g, sigma, d, field)
}

/// Graded Betti numbers β_{i,j}, with absent entries equal to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
    multigraded: Option<BTreeMap<(usize, Vec<Vertex>), u64>>,
}

#[derive(Serialize)]
struct Entry {
    i: usize,
    j: usize,
    rank: u64,
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<Entry> = self.entries.iter().map(|(&(i, j), &rank)| Entry { i, j, rank }).collect();
        list.serialize(s)
    }
}

impl BettiTable {
    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), u64)>>(it: I) -> Self {
        let mut t = BettiTable::default();
        for (k, v) in it {
            t.add(k, v);
        }
        t
    }

    fn add(&mut self, key: (usize, usize), v: u64) {
        if v > 0 {
            *self.entries.entry(key).or_insert(0) += v;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fine-graded entries, when the sweep recorded them.
    pub fn multigraded(&self) -> Option<&BTreeMap<(usize, Vec<Vertex>), u64>> {
        self.multigraded.as_ref()
    }

    /// True when every nonzero entry sits on the strand j = i + d.
    pub fn is_linear(&self, d: usize) -> bool {
        self.entries.keys().all(|&(i, j)| j == i + d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P2Value {
    Finite(u64),
    Infinite,
}

impl P2Value {
    pub fn finite(self) -> Option<u64> {
        match self {
            P2Value::Finite(v) => Some(v),
            P2Value::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == P2Value::Infinite
    }
}

impl Serialize for P2Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            P2Value::Finite(v) => s.serialize_u64(*v),
            P2Value::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct P2Result {
    pub p2: P2Value,
    pub witness_count: u64,
}

impl P2Result {
    pub const INFINITE: P2Result = P2Result { p2: P2Value::Infinite, witness_count: 0 };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub field: FieldSpec,
    pub max_vertices: usize,
    pub multigraded: bool,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { field: FieldSpec::Rationals, max_vertices: DEFAULT_MAX_VERTICES, multigraded: false }
    }
}

/// Betti table of the Stanley–Reisner ideal of the clique complex of `g`, from all induced subcomplexes.
pub fn betti_table(g: &Graph, field: FieldSpec) -> Result<BettiTable> {
    betti_table_with(g, BettiOptions { field, ..BettiOptions::default() })
}

pub fn betti_table_with(g: &Graph, opts: BettiOptions) -> Result<BettiTable> {
    let n = g.len();
    let guard = opts.max_vertices.min(63);
    if n > guard {
        return Err(Error::GuardExceeded { vertices: n, guard });
    }
    let adj = masks_of(g)?;
    let sweep: Vec<(u64, Vec<(usize, u64)>)> = (0u64..1u64 << n)
        .into_par_iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            let size = m.count_ones() as usize;
            let betti = clique_reduced_betti(&adj, u128::from(m), opts.field);
            // H̃ in degree s - 1 contributes β_{i,σ} with i = |σ| - s - 1.
            let hits = betti
                .iter()
                .enumerate()
                .filter(|&(s, &b)| b > 0 && s >= 1 && s < size)
                .map(|(s, &b)| (size - s - 1, b as u64))
                .collect();
            (m, hits)
        })
        .filter(|(_, hits): &(u64, Vec<(usize, u64)>)| !hits.is_empty())
        .collect();
    let mut table = BettiTable::default();
    let mut fine = opts.multigraded.then(BTreeMap::new);
    for (m, hits) in sweep {
        let j = m.count_ones() as usize;
        for (i, b) in hits {
            table.add((i, j), b);
            if let Some(fine) = fine.as_mut() {
                let sigma = (0..n).filter(|&v| m >> v & 1 == 1).map(Vertex).collect();
                fine.insert((i, sigma), b);
            }
        }
    }
    table.multigraded = fine;
    Ok(table)
}

/// The first homological degree where the table leaves the `d`-linear strand.
pub fn p2_from_table(t: &BettiTable, d: usize) -> P2Result {
    // Entries are ordered by (i, j), so the first hit has the smallest i and, within it, the lowest j.
    match t.entries().find(|&((i, j), _)| j > i + d) {
        None => P2Result::INFINITE,
        Some(((p, _), b)) => P2Result { p2: P2Value::Finite(p as u64), witness_count: b },
    }
}

/// p2 of the edge ideal of the complement, read off the shortest chordless cycles.
pub fn p2_monomial(g: &Graph) -> Result<P2Result> {
    p2_monomial_with_cap(g, DEFAULT_CYCLE_CAP)
}

pub fn p2_monomial_with_cap(g: &Graph, cap: usize) -> Result<P2Result> {
    if is_chordal(g) {
        return Ok(P2Result::INFINITE);
    }
    let shortest = shortest_chordless_cycles(g, cap)?;
    let len = shortest.first().map(|c| c.len()).expect("a non-chordal graph has a chordless cycle");
    Ok(P2Result { p2: P2Value::Finite(len as u64 - 3), witness_count: shortest.len() as u64 })
}

/// True exactly when the ideal has a 2-linear resolution.
pub fn is_2_linear_monomial(g: &Graph) -> bool {
    is_chordal(g)
}

/// Betti table of an n-gon with one edge replaced by a rational normal scroll on s new variables.
pub fn poligon_betti(n: usize, s: usize) -> Result<BettiTable> {
    if n < 4 {
        return Err(Error::PolygonTooSmall(n));
    }
    let big_n = (n + s) as u64;
    let mut t = BettiTable::default();
    for i in 1..=big_n - 3 {
        let v = big_n * i * binomial(big_n - 2, i + 1) / (big_n - i - 1);
        t.add(((i - 1) as usize, (i + 1) as usize), v);
    }
    t.add(((big_n - 3) as usize, big_n as usize), 1);
    Ok(t)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
