//! Scroll matrices attached to facets, and the extended complex they define.

use std::collections::HashMap;
use std::ops::Range;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ExtensionErrorKind as Kind, ExtensionSite as Site, Result};
use crate::graph::{CliqueComplex, Edge, Graph, Vertex};

/// One block of a matrix as written in an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBlock {
    pub x: String,
    pub y: Vec<String>,
}

/// A matrix as written in an instance file, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMatrix {
    pub facet: Vec<String>,
    pub x0: String,
    pub blocks: Vec<RawBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollBlock {
    pub x: Vertex,
    pub y: Vec<Vertex>,
}

/// A 2-row scroll matrix on a facet, stored block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollMatrix {
    /// Index of the facet in the base complex.
    pub facet: usize,
    /// Position of this matrix in the instance file.
    pub source: usize,
    pub x0: Vertex,
    pub blocks: Vec<ScrollBlock>,
}

impl ScrollMatrix {
    pub fn head(&self) -> Vertex {
        self.x0
    }

    pub fn top_row(&self) -> Vec<Vertex> {
        let mut row = vec![self.x0];
        for b in &self.blocks {
            row.extend_from_slice(&b.y);
        }
        row
    }

    pub fn bottom_row(&self) -> Vec<Vertex> {
        let mut row = Vec::with_capacity(self.column_count());
        for (j, b) in self.blocks.iter().enumerate() {
            let skip = usize::from(j > 0);
            row.extend_from_slice(&b.y[skip.min(b.y.len())..]);
            row.push(b.x);
        }
        row
    }

    /// Columns as (top, bottom) pairs.
    pub fn columns(&self) -> Vec<(Vertex, Vertex)> {
        self.top_row().into_iter().zip(self.bottom_row()).collect()
    }

    pub fn column_count(&self) -> usize {
        1 + self.blocks.iter().map(|b| b.y.len()).sum::<usize>()
    }

    /// Column indices of block `j` (0-based); the leading column belongs to no block.
    pub fn block_columns(&self, j: usize) -> Range<usize> {
        let start = 1 + self.blocks[..j].iter().map(|b| b.y.len()).sum::<usize>();
        start..start + self.blocks[j].y.len()
    }

    /// The entry in row 2, column 1.
    pub fn lower_left(&self) -> Vertex {
        self.bottom_row()[0]
    }

    pub fn second_row_contains(&self, v: Vertex) -> bool {
        self.bottom_row().contains(&v)
    }

    pub fn new_variables(&self) -> Vec<Vertex> {
        self.blocks.iter().flat_map(|b| b.y.iter().copied()).collect()
    }

    /// Vertices of the facet that occur in the matrix.
    pub fn base_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = std::iter::once(self.x0).chain(self.blocks.iter().map(|b| b.x)).collect();
        vs.sort_unstable();
        vs
    }

    pub fn variables(&self) -> Vec<Vertex> {
        let mut vs = self.base_vertices();
        vs.extend(self.new_variables());
        vs.sort_unstable();
        vs
    }

    /// Index of the block whose base vertex is `x`.
    pub fn block_of(&self, x: Vertex) -> Option<usize> {
        self.blocks.iter().position(|b| b.x == x)
    }

    /// All 2-minors, by column pair.
    pub fn minors(&self, matrix: usize) -> Vec<Minor> {
        let cols = self.columns();
        let mut out = Vec::new();
        for u in 0..cols.len() {
            for v in u + 1..cols.len() {
                out.push(Minor {
                    matrix,
                    columns: (u, v),
                    first: (cols[u].0, cols[v].1),
                    second: (cols[v].0, cols[u].1),
                });
            }
        }
        out
    }
}

/// The minor `first.0 * first.1 - second.0 * second.1` of two columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matrix: usize,
    pub columns: (usize, usize),
    pub first: (Vertex, Vertex),
    pub second: (Vertex, Vertex),
}

/// A clique complex with scroll matrices attached to some facets.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    base: CliqueComplex,
    graph: Graph,
    matrices: Vec<ScrollMatrix>,
    matrix_of: Vec<Option<usize>>,
    extended: Vec<Vec<Vertex>>,
    extended_sets: Vec<FixedBitSet>,
}

impl ExtensionSpec {
    /// The base complex. Its vertices keep their ids in the extended graph.
    pub fn base(&self) -> &CliqueComplex {
        &self.base
    }

    /// The 1-skeleton of the extended complex.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_graph(&self) -> &Graph {
        self.base.skeleton()
    }

    pub fn base_len(&self) -> usize {
        self.base.skeleton().len()
    }

    pub fn is_new(&self, v: Vertex) -> bool {
        v.0 >= self.base_len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        self.graph.name(v)
    }

    pub fn names(&self, vs: &[Vertex]) -> Vec<String> {
        self.graph.names_of(vs)
    }

    /// The family of matrices that introduce at least one new variable, in input order.
    pub fn matrices(&self) -> &[ScrollMatrix] {
        &self.matrices
    }

    pub fn matrix_for_facet(&self, facet: usize) -> Option<usize> {
        self.matrix_of[facet]
    }

    /// A facet together with the new variables of its matrix.
    pub fn extended_facet(&self, facet: usize) -> &[Vertex] {
        &self.extended[facet]
    }

    pub fn extended_contains(&self, facet: usize, v: Vertex) -> bool {
        self.extended_sets[facet].contains(v.0)
    }

    /// Facet labels of the family, as vertex names.
    pub fn facet_names(&self, matrix: usize) -> Vec<String> {
        self.graph.names_of(self.base.facet(self.matrices[matrix].facet))
    }
}

/// Checks the scroll data against the complex and assembles the extended graph.
pub fn validate_extension(base: &CliqueComplex, raw: &[RawMatrix]) -> Result<ExtensionSpec> {
    let g = base.skeleton();
    let n = g.len();
    let mut lookup: HashMap<String, Vertex> = g.vertices().map(|v| (g.name(v).to_string(), v)).collect();
    let mut names: Vec<String> = g.names().to_vec();
    let mut used_facets: Vec<Option<usize>> = vec![None; base.facets().len()];
    let mut matrices = Vec::new();

    for (i, m) in raw.iter().enumerate() {
        let site = Site::matrix(i);
        let mut facet_vs = Vec::with_capacity(m.facet.len());
        for (k, name) in m.facet.iter().enumerate() {
            match g.vertex(name) {
                Some(v) => facet_vs.push(v),
                None => {
                    return Err(Error::ext(site.field("facet").item(k), Kind::NotAFacet(m.facet.clone())));
                }
            }
        }
        let f = base
            .facet_index(&facet_vs)
            .ok_or_else(|| Error::ext(site.field("facet"), Kind::NotAFacet(m.facet.clone())))?;
        if used_facets[f].is_some() {
            return Err(Error::ext(site.field("facet"), Kind::DuplicateFacet(m.facet.clone())));
        }
        used_facets[f] = Some(i);

        let x0 = match g.vertex(&m.x0) {
            Some(v) if base.facet_contains(f, v) => v,
            _ => return Err(Error::ext(site.field("x0"), Kind::HeadOutsideFacet(m.x0.clone()))),
        };
        if m.blocks.is_empty() {
            return Err(Error::ext(site.field("blocks"), Kind::NoBlocks));
        }
        let mut blocks: Vec<ScrollBlock> = Vec::with_capacity(m.blocks.len());
        for (j, b) in m.blocks.iter().enumerate() {
            let bsite = site.block(j);
            let x = match g.vertex(&b.x) {
                Some(v) if base.facet_contains(f, v) => v,
                _ => return Err(Error::ext(bsite.field("x"), Kind::BlockVertexOutsideFacet(b.x.clone()))),
            };
            if x == x0 {
                return Err(Error::ext(bsite.field("x"), Kind::BlockVertexIsHead(b.x.clone())));
            }
            if blocks.iter().any(|o| o.x == x) {
                return Err(Error::ext(bsite.field("x"), Kind::RepeatedBlockVertex(b.x.clone())));
            }
            if base.proper_facet(Edge::new(x0, x)) != Some(f) {
                return Err(Error::ext(bsite.field("x"), Kind::EdgeNotProper(m.x0.clone(), b.x.clone())));
            }
            if j > 0 && b.y.is_empty() {
                return Err(Error::ext(bsite.field("y"), Kind::EmptyLaterBlock));
            }
            let mut ys = Vec::with_capacity(b.y.len());
            for (k, name) in b.y.iter().enumerate() {
                let ysite = bsite.field("y").item(k);
                if name.is_empty() {
                    return Err(Error::ext(ysite, Kind::EmptyName));
                }
                if let Some(&v) = lookup.get(name.as_str()) {
                    let kind = if v.0 < n {
                        Kind::NewVariableIsBaseVertex(name.clone())
                    } else {
                        Kind::NewVariableReused(name.clone())
                    };
                    return Err(Error::ext(ysite, kind));
                }
                let v = Vertex(names.len());
                names.push(name.clone());
                lookup.insert(name.clone(), v);
                ys.push(v);
            }
            blocks.push(ScrollBlock { x, y: ys });
        }
        if blocks.iter().all(|b| b.y.is_empty()) {
            continue;
        }
        matrices.push(ScrollMatrix { facet: f, source: i, x0, blocks });
    }

    let total = names.len();
    let mut matrix_of = vec![None; base.facets().len()];
    let mut extended: Vec<Vec<Vertex>> = base.facets().to_vec();
    for (mi, m) in matrices.iter().enumerate() {
        matrix_of[m.facet] = Some(mi);
        extended[m.facet].extend(m.new_variables());
        extended[m.facet].sort_unstable();
    }
    let mut pairs: Vec<(Vertex, Vertex)> = g.edges().iter().map(|e| e.ends()).collect();
    for m in &matrices {
        let fbar = &extended[m.facet];
        for y in m.new_variables() {
            for &w in fbar {
                if w != y && (w.0 < n || w < y) {
                    pairs.push((w, y));
                }
            }
        }
    }
    let graph = Graph::from_pairs(names, pairs)?;
    let extended_sets = extended
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(total);
            f.iter().for_each(|v| s.insert(v.0));
            s
        })
        .collect();
    Ok(ExtensionSpec { base: base.clone(), graph, matrices, matrix_of, extended, extended_sets })
}

/// Generators of the binomial ideal: non-edges of the extended graph and all matrix minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSystem {
    pub non_faces: Vec<Edge>,
    pub minors: Vec<Minor>,
}

pub fn generators(ext: &ExtensionSpec) -> GeneratorSystem {
    let minors = ext.matrices.iter().enumerate().flat_map(|(i, m)| m.minors(i)).collect();
    GeneratorSystem { non_faces: ext.graph.non_edges(), minors }
}

/// The prime attached to one facet: its minors plus every variable outside the extended facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub matrix: usize,
    pub minors: Vec<Minor>,
    pub excluded: Vec<Vertex>,
}

pub fn primary_components(ext: &ExtensionSpec) -> Vec<PrimaryComponent> {
    ext.matrices
        .iter()
        .enumerate()
        .map(|(i, m)| PrimaryComponent {
            matrix: i,
            minors: m.minors(i),
            excluded: ext.graph.vertices().filter(|&v| !ext.extended_contains(m.facet, v)).collect(),
        })
        .collect()
}

/// Outcome of the sufficient condition for the sum of scroll ideals to be prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Toricity {
    /// Components of the sharing graph, each a tree of matrix indices.
    Pass { components: Vec<Vec<usize>> },
    SharedPair { first: usize, second: usize, shared: Vec<Vertex> },
    Cycle { matrices: Vec<usize> },
}

impl Toricity {
    pub fn passes(&self) -> bool {
        matches!(self, Toricity::Pass { .. })
    }
}

pub fn toricity_gate(ext: &ExtensionSpec) -> Toricity {
    let vars: Vec<Vec<Vertex>> = ext.matrices.iter().map(ScrollMatrix::variables).collect();
    let k = vars.len();
    let mut adj = vec![Vec::new(); k];
    for a in 0..k {
        for b in a + 1..k {
            let shared: Vec<Vertex> = vars[a].iter().copied().filter(|v| vars[b].binary_search(v).is_ok()).collect();
            match shared.len() {
                0 => {}
                1 => {
                    adj[a].push(b);
                    adj[b].push(a);
                }
                _ => return Toricity::SharedPair { first: a, second: b, shared },
            }
        }
    }
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    let mut components = Vec::new();
    for root in 0..k {
        if seen[root] {
            continue;
        }
        let mut comp = vec![root];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if b == parent[a] {
                    continue;
                }
                if seen[b] {
                    return Toricity::Cycle { matrices: tree_cycle(&parent, a, b) };
                }
                seen[b] = true;
                parent[b] = a;
                comp.push(b);
                stack.push(b);
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    Toricity::Pass { components }
}

fn tree_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path_up = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let (pa, pb) = (path_up(a), path_up(b));
    let meet = *pa.iter().find(|v| pb.contains(v)).expect("same component");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&v| v != meet).collect();
    cycle.push(meet);
    let tail: Vec<usize> = pb.iter().copied().take_while(|&v| v != meet).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}
