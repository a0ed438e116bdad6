//! Virtual minimal cycles, local substitution lengths and the bounds on p2 they give.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{is_chordal, Cycle, CycleEnumerator, Edge, Graph, Vertex, DEFAULT_CYCLE_CAP};
use crate::grobner::{initial_complex, InitialComplex};
use crate::homology::{clique_homology_rank, p2_monomial_with_cap, P2Result, P2Value};
use crate::linalg::FieldSpec;
use crate::order::{find_admissible_order, pi_star, vertex_order, ColumnPermutation, OrderOutcome, VarOrder};
use crate::scroll::{toricity_gate, ExtensionSpec, Toricity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    NonVirtual,
    R1,
    R2,
    R3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub edge: Edge,
    pub kind: EdgeKind,
    pub facet: Option<usize>,
    pub matrix: Option<usize>,
    /// Block of the matrix whose base vertex lies on the edge (0-based).
    pub block: Option<usize>,
    pub eta: Option<usize>,
    pub t: usize,
    /// Blocks whose base vertex sees nothing of the cycle away from the edge (0-based).
    pub jls: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCycle {
    pub cycle: Cycle,
    pub edge_classes: Vec<EdgeClass>,
    pub in_ctilde_family: bool,
}

impl VirtualCycle {
    /// Sum of the substitution lengths of all edges.
    pub fn substituted_len(&self) -> usize {
        self.edge_classes.iter().map(|c| c.t).sum()
    }
}

/// Edges of the base graph that disappear from the initial complex.
pub fn virtual_edges(ext: &ExtensionSpec) -> Result<Vec<Edge>> {
    let perms: Vec<ColumnPermutation> = ext.matrices().iter().map(pi_star).collect();
    virtual_edges_for(ext, &initial_complex(ext, &perms)?)
}

/// Base edges deleted in `initial`.
pub fn virtual_edges_for(ext: &ExtensionSpec, initial: &InitialComplex) -> Result<Vec<Edge>> {
    Ok(ext
        .base_graph()
        .edges()
        .iter()
        .copied()
        .filter(|e| initial.deleted.binary_search(e).is_ok())
        .collect())
}

/// Cycles of the base graph of length at least four whose chords are all virtual
/// and no two of whose edges lie in one facet.
pub fn virtual_minimal_cycles(ext: &ExtensionSpec) -> Result<Vec<VirtualCycle>> {
    Analysis::new(ext, DEFAULT_CYCLE_CAP)?.virtual_cycles()
}

pub(crate) fn enumerate_virtual(ext: &ExtensionSpec, virtual_set: &[Edge], cap: usize) -> Result<Vec<Cycle>> {
    let g = ext.base_graph();
    let solid = g.without_edges(virtual_set);
    let base = ext.base();
    let share = |a: Edge, b: Edge| {
        let (b0, b1) = b.ends();
        a != b && base.facets_containing(a).iter().any(|&f| base.facet_contains(f, b0) && base.facet_contains(f, b1))
    };
    let mut run = CycleEnumerator::new(g, &solid, share, cap);
    run.min_len = 4;
    run.enumerate()
}

/// Classifies one edge of a virtual minimal cycle and gives its substitution length.
pub fn classify_edge(ext: &ExtensionSpec, c: &Cycle, e: Edge) -> Result<EdgeClass> {
    classify_with(ext, &virtual_edges(ext)?, c, e)
}

fn classify_with(ext: &ExtensionSpec, virtual_set: &[Edge], c: &Cycle, e: Edge) -> Result<EdgeClass> {
    if !c.edges().contains(&e) {
        return Err(Error::NotACycle("edge is not on the cycle".into()));
    }
    if virtual_set.binary_search(&e).is_err() {
        return Ok(EdgeClass {
            edge: e,
            kind: EdgeKind::NonVirtual,
            facet: None,
            matrix: None,
            block: None,
            eta: None,
            t: 1,
            jls: None,
        });
    }
    let base = ext.base();
    let g = ext.base_graph();
    let f = base.proper_facet(e).expect("virtual edges are proper");
    let mi = ext.matrix_for_facet(f).expect("virtual edges lie on extended facets");
    let m = &ext.matrices()[mi];
    let xk = e.other(m.x0).expect("virtual edges contain the head");
    let k = m.block_of(xk).expect("the far end of a virtual edge is a block vertex");
    let away: Vec<Vertex> = c.vertices().iter().copied().filter(|&v| !e.contains(v)).collect();
    // Adjacency in the initial complex: virtual edges do not count.
    let blind = |v: Vertex| {
        away.iter().all(|&w| !g.has_edge(v, w) || virtual_set.binary_search(&Edge::new(v, w)).is_ok())
    };
    let in_matrix = m.base_vertices();
    let spare = base.facet(f).iter().any(|&x| in_matrix.binary_search(&x).is_err() && blind(x));
    let mut class = EdgeClass {
        edge: e,
        kind: EdgeKind::R1,
        facet: Some(f),
        matrix: Some(mi),
        block: Some(k),
        eta: None,
        t: 2,
        jls: None,
    };
    if spare {
        return Ok(class);
    }
    let jls: Vec<usize> = (0..m.blocks.len()).filter(|&j| j == k || blind(m.blocks[j].x)).collect();
    let eta = jls.iter().map(|&j| m.blocks[j].y.len()).min().expect("k is always present");
    let yk = m.blocks[k].y.len();
    (class.kind, class.t) = if eta < yk { (EdgeKind::R2, eta + 2) } else { (EdgeKind::R3, eta + 1) };
    class.eta = Some(eta);
    class.jls = Some(jls);
    Ok(class)
}

fn in_family(ext: &ExtensionSpec, classes: &[EdgeClass]) -> bool {
    classes.iter().all(|c| c.kind == EdgeKind::NonVirtual || {
        let m = &ext.matrices()[c.matrix.expect("virtual edges carry a matrix")];
        c.block == Some(0) && c.edge.contains(m.x0)
    })
}

/// Replaces every virtual edge by the first-block path of its matrix.
pub fn c_tilde(ext: &ExtensionSpec, vc: &VirtualCycle) -> Result<Cycle> {
    if !vc.in_ctilde_family {
        return Err(Error::NotACycle("cycle has a virtual edge outside the first block".into()));
    }
    let vs = vc.cycle.vertices();
    let mut out = Vec::new();
    for i in 0..vs.len() {
        let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
        out.push(u);
        let class = vc
            .edge_classes
            .iter()
            .find(|c| c.edge == Edge::new(u, v))
            .expect("every cycle edge is classified");
        if let Some(mi) = class.matrix {
            let m = &ext.matrices()[mi];
            let ys = &m.blocks[0].y;
            if u == m.x0 {
                out.extend(ys.iter().copied());
            } else {
                out.extend(ys.iter().rev().copied());
            }
        }
    }
    Cycle::in_graph(ext.graph(), out)
}

/// dim H̃₁ of the clique complex of the extended graph restricted to the cycle's vertices.
pub fn homology_witness(ext: &ExtensionSpec, ct: &Cycle, field: FieldSpec) -> Result<usize> {
    clique_homology_rank(ext.graph(), ct.vertices(), 1, field)
}

pub fn is_2_linear_extension(ext: &ExtensionSpec) -> bool {
    is_chordal(ext.base_graph())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    /// From local substitution lengths.
    pub value: P2Value,
    pub witness: Option<VirtualCycle>,
    /// p2 of the initial complex; this is the certified bound.
    pub initial: P2Result,
    pub initial_witness: Option<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Value { value: u64, cycle: VirtualCycle, ctilde: Cycle },
    NotApplicable(UpperReason),
}

impl UpperBound {
    pub fn value(&self) -> Option<u64> {
        match self {
            UpperBound::Value { value, .. } => Some(*value),
            UpperBound::NotApplicable(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperReason {
    Toricity(Toricity),
    EmptyFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactP2 {
    Exact(u64),
    Infinite,
    Interval { lower: Option<P2Value>, upper: Option<u64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub orderable: bool,
    pub toric: bool,
    pub family_complete: bool,
    pub edge_shapes: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.orderable && self.toric && self.family_complete && self.edge_shapes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Report {
    pub chordal_base: bool,
    pub order: OrderOutcome,
    pub lower: Option<LowerBound>,
    pub upper: UpperBound,
    pub exact: ExactP2,
    pub hypotheses: Hypotheses,
}

/// Shared intermediate results for one extension.
#[derive(Clone, Debug)]
pub struct Analysis<'a> {
    ext: &'a ExtensionSpec,
    cap: usize,
    pub perms: Vec<ColumnPermutation>,
    pub initial: InitialComplex,
    pub virtual_edges: Vec<Edge>,
    pub order: OrderOutcome,
}

impl<'a> Analysis<'a> {
    pub fn new(ext: &'a ExtensionSpec, cap: usize) -> Result<Self> {
        let perms: Vec<ColumnPermutation> = ext.matrices().iter().map(pi_star).collect();
        let initial = initial_complex(ext, &perms)?;
        let virtual_edges = virtual_edges_for(ext, &initial)?;
        let order = find_admissible_order(ext.matrices());
        Ok(Analysis { ext, cap, perms, initial, virtual_edges, order })
    }

    pub fn ext(&self) -> &ExtensionSpec {
        self.ext
    }

    /// The variable order of the admissible order with the interleaved permutations.
    pub fn var_order(&self) -> Result<VarOrder> {
        match &self.order {
            OrderOutcome::Order(o) => vertex_order(self.ext, o, &self.perms),
            OrderOutcome::Cycle(w) => Err(Error::NotOrderable { witness: w.clone() }),
        }
    }

    pub fn classify(&self, c: &Cycle, e: Edge) -> Result<EdgeClass> {
        classify_with(self.ext, &self.virtual_edges, c, e)
    }

    pub fn virtual_cycles(&self) -> Result<Vec<VirtualCycle>> {
        let cycles = enumerate_virtual(self.ext, &self.virtual_edges, self.cap)?;
        cycles
            .into_par_iter()
            .map(|cycle| {
                let edge_classes = cycle
                    .edges()
                    .into_iter()
                    .map(|e| self.classify(&cycle, e))
                    .collect::<Result<Vec<_>>>()?;
                let in_ctilde_family = in_family(self.ext, &edge_classes);
                Ok(VirtualCycle { cycle, edge_classes, in_ctilde_family })
            })
            .collect()
    }

    pub fn lower_bound(&self, cycles: &[VirtualCycle]) -> Result<LowerBound> {
        if let OrderOutcome::Cycle(w) = &self.order {
            return Err(Error::NotOrderable { witness: w.clone() });
        }
        let best = cycles.iter().min_by_key(|c| (c.substituted_len(), c.cycle.clone()));
        let value = best.map_or(P2Value::Infinite, |c| P2Value::Finite(c.substituted_len() as u64 - 3));
        let initial = p2_monomial_with_cap(&self.initial.graph, self.cap)?;
        let initial_witness = match initial.p2 {
            P2Value::Infinite => None,
            P2Value::Finite(_) => crate::graph::shortest_chordless_cycles(&self.initial.graph, self.cap)?
                .into_iter()
                .next(),
        };
        Ok(LowerBound { value, witness: best.cloned(), initial, initial_witness })
    }

    pub fn upper_bound(&self, cycles: &[VirtualCycle]) -> Result<UpperBound> {
        let gate = toricity_gate(self.ext);
        if !gate.passes() {
            return Ok(UpperBound::NotApplicable(UpperReason::Toricity(gate)));
        }
        let mut best: Option<(usize, &VirtualCycle, Cycle)> = None;
        for vc in cycles.iter().filter(|c| c.in_ctilde_family) {
            let ct = c_tilde(self.ext, vc)?;
            if best.as_ref().is_none_or(|(len, _, _)| ct.len() < *len) {
                best = Some((ct.len(), vc, ct));
            }
        }
        Ok(match best {
            None => UpperBound::NotApplicable(UpperReason::EmptyFamily),
            Some((len, vc, ct)) => UpperBound::Value { value: len as u64 - 3, cycle: vc.clone(), ctilde: ct },
        })
    }

    fn edge_shapes(&self) -> bool {
        self.virtual_edges.iter().all(|&e| {
            let f = self.ext.base().proper_facet(e).expect("virtual edges are proper");
            let m = &self.ext.matrices()[self.ext.matrix_for_facet(f).expect("extended facet")];
            let y1 = m.blocks[0].y.len();
            let smallest = m.blocks.iter().map(|b| b.y.len()).min().expect("blocks are nonempty");
            let covers = m.base_vertices() == self.ext.base().facet(f);
            (y1 == smallest && y1 >= 2 && covers) || y1 == 1
        })
    }

    pub fn report(&self) -> Result<P2Report> {
        let chordal_base = is_2_linear_extension(self.ext);
        let cycles = self.virtual_cycles()?;
        let lower = match self.order {
            OrderOutcome::Order(_) => Some(self.lower_bound(&cycles)?),
            OrderOutcome::Cycle(_) => None,
        };
        let upper = self.upper_bound(&cycles)?;
        let hypotheses = Hypotheses {
            orderable: lower.is_some(),
            toric: toricity_gate(self.ext).passes(),
            family_complete: cycles.iter().all(|c| c.in_ctilde_family),
            edge_shapes: self.edge_shapes(),
        };
        let exact = if chordal_base {
            ExactP2::Infinite
        } else {
            match (&upper, hypotheses.all()) {
                (UpperBound::Value { value, .. }, true) => ExactP2::Exact(*value),
                _ => ExactP2::Interval { lower: lower.as_ref().map(|l| l.value), upper: upper.value() },
            }
        };
        Ok(P2Report { chordal_base, order: self.order.clone(), lower, upper, exact, hypotheses })
    }
}

pub fn lower_bound(ext: &ExtensionSpec) -> Result<LowerBound> {
    let a = Analysis::new(ext, DEFAULT_CYCLE_CAP)?;
    a.lower_bound(&a.virtual_cycles()?)
}

pub fn upper_bound(ext: &ExtensionSpec) -> Result<UpperBound> {
    let a = Analysis::new(ext, DEFAULT_CYCLE_CAP)?;
    a.upper_bound(&a.virtual_cycles()?)
}

pub fn exact_p2(ext: &ExtensionSpec) -> Result<P2Report> {
    Analysis::new(ext, DEFAULT_CYCLE_CAP)?.report()
}

/// The skeleton of the initial complex for the interleaved permutations.
pub fn initial_graph(ext: &ExtensionSpec) -> Result<Graph> {
    Ok(Analysis::new(ext, DEFAULT_CYCLE_CAP)?.initial.graph)
}
