//! Simple graphs, their clique complexes and chordless cycles.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default ceiling on the number of cycles an enumeration may return.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A vertex, identified by its input rank.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An unordered pair of distinct vertices, stored with the smaller rank first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics if `u == v`.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "an edge needs two distinct ends");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    lookup: HashMap<String, Vertex>,
    adj: Vec<FixedBitSet>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from named vertices and named edges. Duplicate edges are merged.
    pub fn build<V, A, B>(vertices: &[V], edges: &[(A, B)]) -> Result<Self>
    where
        V: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let lookup = Self::index_names(&names)?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (index, (a, b)) in edges.iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            let find = |name: &str| {
                lookup.get(name).copied().ok_or_else(|| Error::UnknownEndpoint {
                    index,
                    name: name.to_string(),
                })
            };
            let (u, v) = (find(a)?, find(b)?);
            if u == v {
                return Err(Error::LoopEdge { index, name: a.to_string() });
            }
            pairs.push((u, v));
        }
        Ok(Self::assemble(names, lookup, pairs))
    }

    /// Builds a graph over `names` from index pairs.
    pub fn from_pairs<I>(names: Vec<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let lookup = Self::index_names(&names)?;
        let mut collected = Vec::new();
        for (index, (u, v)) in pairs.into_iter().enumerate() {
            for w in [u, v] {
                if w.0 >= names.len() {
                    return Err(Error::UnknownEndpoint { index, name: format!("#{}", w.0) });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { index, name: names[u.0].clone() });
            }
            collected.push((u, v));
        }
        Ok(Self::assemble(names, lookup, collected))
    }

    /// Graph on `n` vertices named `0..n`.
    pub fn numbered<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_pairs(names, pairs.into_iter().map(|(a, b)| (Vertex(a), Vertex(b))))
            .expect("numbered graph input must be loop free and in range")
    }

    fn index_names(names: &[String]) -> Result<HashMap<String, Vertex>> {
        let mut lookup = HashMap::with_capacity(names.len());
        for (index, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyVertexName { index });
            }
            if lookup.insert(name.clone(), Vertex(index)).is_some() {
                return Err(Error::DuplicateVertex { index, name: name.clone() });
            }
        }
        Ok(lookup)
    }

    fn assemble(
        names: Vec<String>,
        lookup: HashMap<String, Vertex>,
        pairs: Vec<(Vertex, Vertex)>,
    ) -> Self {
        let n = names.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in &pairs {
            adj[u.0].insert(v.0);
            adj[v.0].insert(u.0);
        }
        let mut edges: Vec<Edge> = pairs.into_iter().map(|(u, v)| Edge::new(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph { names, lookup, adj, edges }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(Vertex)
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn names_of(&self, vs: &[Vertex]) -> Vec<String> {
        vs.iter().map(|&v| self.names[v.0].clone()).collect()
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.lookup.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u.0].contains(v.0)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let (u, v) = e.ends();
        self.has_edge(u, v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v.0].ones().map(Vertex)
    }

    pub fn neighbor_set(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.0].count_ones(..)
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Pairs of distinct vertices that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.adj[u].contains(v) {
                    out.push(Edge(Vertex(u), Vertex(v)));
                }
            }
        }
        out
    }

    /// Subgraph induced on `w`; vertices are renumbered preserving rank.
    pub fn induced(&self, w: &[Vertex]) -> Result<Graph> {
        let mut keep: Vec<Vertex> = Vec::with_capacity(w.len());
        for &v in w {
            if v.0 >= self.len() {
                return Err(Error::UnknownVertex { name: format!("#{}", v.0) });
            }
            keep.push(v);
        }
        keep.sort_unstable();
        keep.dedup();
        let mut position = vec![usize::MAX; self.len()];
        for (i, &v) in keep.iter().enumerate() {
            position[v.0] = i;
        }
        let names = keep.iter().map(|&v| self.names[v.0].clone()).collect();
        let pairs = self
            .edges
            .iter()
            .filter_map(|e| {
                let (u, v) = e.ends();
                let (pu, pv) = (position[u.0], position[v.0]);
                (pu != usize::MAX && pv != usize::MAX).then_some((Vertex(pu), Vertex(pv)))
            })
            .collect::<Vec<_>>();
        Graph::from_pairs(names, pairs)
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut gone: Vec<Edge> = removed.to_vec();
        gone.sort_unstable();
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|e| gone.binary_search(e).is_err())
            .map(|e| e.ends())
            .collect();
        Self::assemble(self.names.clone(), self.lookup.clone(), pairs)
    }

    /// Adjacency as bit masks, available when there are at most 128 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u128>> {
        if self.len() > 128 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|row| row.ones().fold(0u128, |m, j| m | (1u128 << j)))
                .collect(),
        )
    }
}

/// Maximal cliques, each sorted by rank, listed in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    bron_kerbosch(g, &mut Vec::new(), p, x, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort_unstable();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<Vertex>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<Vertex>>,
) {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&g.adj[u]).count())
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.difference(&g.adj[pivot]).collect();
    for v in candidates {
        r.push(Vertex(v));
        let mut np = p.clone();
        np.intersect_with(&g.adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&g.adj[v]);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Chordality through maximum cardinality search and a perfect elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.len();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        numbered[v] = true;
        visit.push(v);
        for u in g.adj[v].ones() {
            if !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    // The reverse of the visit order is a perfect elimination ordering iff g is chordal.
    let mut position = vec![0usize; n];
    for (i, &v) in visit.iter().rev().enumerate() {
        position[v] = i;
    }
    for &v in visit.iter().rev() {
        let later: Vec<usize> = g.adj[v].ones().filter(|&u| position[u] > position[v]).collect();
        if let Some(&first) = later.iter().min_by_key(|&&u| position[u]) {
            if later.iter().any(|&u| u != first && !g.adj[first].contains(u)) {
                return false;
            }
        }
    }
    true
}

/// A cycle in canonical form: it starts at its smallest vertex and the
/// second vertex is smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence without checking adjacency.
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        if let Some(start) = vertices.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i) {
            vertices.rotate_left(start);
        }
        if vertices.len() > 2 && vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Cycle { vertices }
    }

    /// Checks that `vertices` is a cycle of `g` and canonicalizes it.
    pub fn in_graph(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle("fewer than three vertices".into()));
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != vertices.len() {
            return Err(Error::NotACycle("repeated vertex".into()));
        }
        let k = vertices.len();
        for i in 0..k {
            let (u, v) = (vertices[i], vertices[(i + 1) % k]);
            if u.0 >= g.len() || v.0 >= g.len() || !g.has_edge(u, v) {
                return Err(Error::NotACycle(format!("missing edge at position {i}")));
            }
        }
        Ok(Cycle::new(vertices))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Cycle edges in traversal order, the closing edge last.
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        g.names_of(&self.vertices)
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.0.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// Bounds for cycle enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleSearch {
    pub max_len: Option<usize>,
    pub cap: usize,
}

impl Default for CycleSearch {
    fn default() -> Self {
        CycleSearch { max_len: None, cap: DEFAULT_CYCLE_CAP }
    }
}

/// Induced cycles of length at least four, sorted by length then vertices.
pub fn chordless_cycles(g: &Graph, search: CycleSearch) -> Result<Vec<Cycle>> {
    let mut run = CycleEnumerator::new(g, g, |_, _| false, search.cap);
    run.min_len = 4;
    run.max_len = search.max_len;
    run.enumerate()
}

/// All chordless cycles of the smallest length, or an empty list for chordal graphs.
pub fn shortest_chordless_cycles(g: &Graph, cap: usize) -> Result<Vec<Cycle>> {
    let mut run = CycleEnumerator::new(g, g, |_, _| false, cap);
    run.min_len = 4;
    run.shortest_only = true;
    run.enumerate()
}

/// Backtracking search for cycles of `walk` whose non-consecutive vertex pairs
/// are never edges of `chord`, and whose edges pairwise avoid `conflict`.
pub(crate) struct CycleEnumerator<'a, C> {
    walk: &'a Graph,
    chord: &'a Graph,
    conflict: C,
    pub(crate) min_len: usize,
    pub(crate) max_len: Option<usize>,
    pub(crate) shortest_only: bool,
    cap: usize,
    found: Vec<Cycle>,
    best: usize,
    path: Vec<Vertex>,
    on_path: Vec<bool>,
}

impl<'a, C> CycleEnumerator<'a, C>
where
    C: Fn(Edge, Edge) -> bool,
{
    pub(crate) fn new(walk: &'a Graph, chord: &'a Graph, conflict: C, cap: usize) -> Self {
        CycleEnumerator {
            walk,
            chord,
            conflict,
            min_len: 3,
            max_len: None,
            shortest_only: false,
            cap,
            found: Vec::new(),
            best: usize::MAX,
            path: Vec::new(),
            on_path: vec![false; walk.len()],
        }
    }

    pub(crate) fn enumerate(mut self) -> Result<Vec<Cycle>> {
        for v0 in self.walk.vertices() {
            self.path.push(v0);
            self.on_path[v0.0] = true;
            self.extend()?;
            self.on_path[v0.0] = false;
            self.path.pop();
        }
        self.found.sort_unstable();
        Ok(self.found)
    }

    fn bound(&self) -> usize {
        let limit = self.max_len.unwrap_or(usize::MAX);
        if self.shortest_only {
            limit.min(self.best)
        } else {
            limit
        }
    }

    fn clashes(&self, e: Edge) -> bool {
        self.path.windows(2).any(|w| (self.conflict)(Edge::new(w[0], w[1]), e))
    }

    fn extend(&mut self) -> Result<()> {
        let k = self.path.len();
        if k >= self.bound() {
            return Ok(());
        }
        let v0 = self.path[0];
        let last = self.path[k - 1];
        let next: Vec<Vertex> = self.walk.neighbors(last).collect();
        for w in next {
            if w <= v0 || self.on_path[w.0] {
                continue;
            }
            let inner = self.path.get(1..k.saturating_sub(1)).unwrap_or(&[]);
            if inner.iter().any(|&u| self.chord.has_edge(w, u)) {
                continue;
            }
            let step = Edge::new(last, w);
            if self.clashes(step) {
                continue;
            }
            if k >= 2 {
                let closing = self.walk.has_edge(w, v0);
                if closing && k + 1 >= self.min_len && self.path[1] < w {
                    let back = Edge::new(w, v0);
                    if !self.clashes(back) && !(self.conflict)(step, back) {
                        let mut vs = self.path.clone();
                        vs.push(w);
                        self.record(Cycle { vertices: vs })?;
                    }
                }
                if self.chord.has_edge(w, v0) {
                    continue;
                }
            }
            self.path.push(w);
            self.on_path[w.0] = true;
            let r = self.extend();
            self.on_path[w.0] = false;
            self.path.pop();
            r?;
        }
        Ok(())
    }

    fn record(&mut self, c: Cycle) -> Result<()> {
        if self.shortest_only && c.len() < self.best {
            self.best = c.len();
            self.found.clear();
        }
        if self.found.len() >= self.cap {
            return Err(Error::CycleCapExceeded { cap: self.cap });
        }
        self.found.push(c);
        Ok(())
    }
}

/// A flag complex together with its facets in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    skeleton: Graph,
    facets: Vec<Vec<Vertex>>,
    facet_sets: Vec<FixedBitSet>,
}

impl CliqueComplex {
    pub fn new(skeleton: Graph) -> Self {
        let facets = maximal_cliques(&skeleton);
        Self::assemble(skeleton, facets)
    }

    /// Uses `facets` as the facet order after checking they are exactly the maximal cliques.
    pub fn with_facets(skeleton: Graph, facets: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut expected = maximal_cliques(&skeleton);
        let mut given: Vec<Vec<Vertex>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        for (index, f) in given.iter().enumerate() {
            if expected.binary_search(f).is_err() {
                return Err(Error::FacetMismatch {
                    index: Some(index),
                    reason: format!("{:?} is not a maximal clique", skeleton.names_of(f)),
                });
            }
            if given[..index].contains(f) {
                return Err(Error::FacetMismatch {
                    index: Some(index),
                    reason: "facet listed twice".into(),
                });
            }
        }
        if given.len() != expected.len() {
            expected.retain(|f| !given.contains(f));
            return Err(Error::FacetMismatch {
                index: None,
                reason: format!("missing {:?}", skeleton.names_of(&expected[0])),
            });
        }
        given.shrink_to_fit();
        Ok(Self::assemble(skeleton, given))
    }

    fn assemble(skeleton: Graph, facets: Vec<Vec<Vertex>>) -> Self {
        let n = skeleton.len();
        let facet_sets = facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(n);
                f.iter().for_each(|v| s.insert(v.0));
                s
            })
            .collect();
        CliqueComplex { skeleton, facets, facet_sets }
    }

    pub fn skeleton(&self) -> &Graph {
        &self.skeleton
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &[Vertex] {
        &self.facets[i]
    }

    pub fn facet_index(&self, vs: &[Vertex]) -> Option<usize> {
        let mut key = vs.to_vec();
        key.sort_unstable();
        self.facets.iter().position(|f| *f == key)
    }

    pub fn facet_contains(&self, i: usize, v: Vertex) -> bool {
        self.facet_sets[i].contains(v.0)
    }

    /// Indices of the facets containing both ends of `e`.
    pub fn facets_containing(&self, e: Edge) -> Vec<usize> {
        let (u, v) = e.ends();
        (0..self.facets.len())
            .filter(|&i| self.facet_sets[i].contains(u.0) && self.facet_sets[i].contains(v.0))
            .collect()
    }

    /// The facet of a proper edge, or `None` if `e` lies in zero or several facets.
    pub fn proper_facet(&self, e: Edge) -> Option<usize> {
        match self.facets_containing(e).as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn proper_edges(&self) -> Vec<Edge> {
        self.skeleton
            .edges()
            .iter()
            .copied()
            .filter(|&e| self.proper_facet(e).is_some())
            .collect()
    }
}
