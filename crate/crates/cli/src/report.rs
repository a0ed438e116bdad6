//! JSON views of library results.

use serde_json::{json, Value};

use scrollex::{
    BettiTable, Cycle, EdgeClass, EdgeKind, ExactP2, ExtensionSpec, Graph, Hypotheses, LowerBound, OrderOutcome,
    P2Report, P2Result, P2Value, Toricity, UpperBound, UpperReason, Vertex, VirtualCycle,
};

pub fn p2_value(v: P2Value) -> Value {
    serde_json::to_value(v).expect("p2 values serialize")
}

pub fn p2_result(r: &P2Result) -> Value {
    json!({ "p2": p2_value(r.p2), "witness_count": r.witness_count })
}

pub fn betti(t: &BettiTable) -> Value {
    serde_json::to_value(t).expect("tables serialize")
}

pub fn names(g: &Graph, vs: &[Vertex]) -> Value {
    json!(g.names_of(vs))
}

pub fn cycle(g: &Graph, c: &Cycle) -> Value {
    json!(c.names(g))
}

/// A matrix of the family, named by its input position and facet.
pub fn matrix(ext: &ExtensionSpec, i: usize) -> Value {
    json!({ "extension": ext.matrices()[i].source, "facet": ext.facet_names(i) })
}

pub fn order(ext: &ExtensionSpec, o: &OrderOutcome) -> Value {
    let list = |ix: &[usize]| Value::Array(ix.iter().map(|&i| matrix(ext, i)).collect());
    match o {
        OrderOutcome::Order(ix) => json!({ "orderable": true, "order": list(ix), "witness": null }),
        OrderOutcome::Cycle(ix) => json!({ "orderable": false, "order": null, "witness": list(ix) }),
    }
}

fn kind(k: EdgeKind) -> &'static str {
    match k {
        EdgeKind::NonVirtual => "non-virtual",
        EdgeKind::R1 => "R1",
        EdgeKind::R2 => "R2",
        EdgeKind::R3 => "R3",
    }
}

pub fn edge_class(ext: &ExtensionSpec, c: &EdgeClass) -> Value {
    let (u, v) = c.edge.ends();
    json!({
        "edge": [ext.name(u), ext.name(v)],
        "kind": kind(c.kind),
        "t": c.t,
        "eta": c.eta,
        "block": c.block,
        "jls": c.jls,
        "extension": c.matrix.map(|m| ext.matrices()[m].source),
    })
}

pub fn virtual_cycle(ext: &ExtensionSpec, vc: &VirtualCycle, ctilde: Option<&Cycle>) -> Value {
    json!({
        "cycle": cycle(ext.graph(), &vc.cycle),
        "length": vc.cycle.len(),
        "edges": vc.edge_classes.iter().map(|c| edge_class(ext, c)).collect::<Vec<_>>(),
        "substituted_length": vc.substituted_len(),
        "in_ctilde_family": vc.in_ctilde_family,
        "ctilde": ctilde.map(|c| cycle(ext.graph(), c)),
    })
}

pub fn toricity(ext: &ExtensionSpec, t: &Toricity) -> Value {
    let list = |ix: &[usize]| Value::Array(ix.iter().map(|&i| matrix(ext, i)).collect());
    match t {
        Toricity::Pass { components } => json!({
            "passes": true,
            "components": components.iter().map(|c| list(c)).collect::<Vec<_>>(),
        }),
        Toricity::SharedPair { first, second, shared } => json!({
            "passes": false,
            "shared_pair": [matrix(ext, *first), matrix(ext, *second)],
            "shared": names(ext.graph(), shared),
        }),
        Toricity::Cycle { matrices } => json!({ "passes": false, "cycle": list(matrices) }),
    }
}

pub fn lower(ext: &ExtensionSpec, l: &LowerBound) -> Value {
    json!({
        "value": p2_value(l.value),
        "witness": l.witness.as_ref().map(|w| virtual_cycle(ext, w, None)),
        "initial": p2_result(&l.initial),
        "initial_witness": l.initial_witness.as_ref().map(|c| cycle(ext.graph(), c)),
    })
}

pub fn upper(ext: &ExtensionSpec, u: &UpperBound) -> Value {
    match u {
        UpperBound::Value { value, cycle: vc, ctilde } => json!({
            "value": value,
            "ctilde_length": ctilde.len(),
            "witness": virtual_cycle(ext, vc, Some(ctilde)),
        }),
        UpperBound::NotApplicable(UpperReason::Toricity(t)) => json!({
            "value": null,
            "reason": "toricity",
            "toricity": toricity(ext, t),
        }),
        UpperBound::NotApplicable(UpperReason::EmptyFamily) => json!({ "value": null, "reason": "empty-family" }),
    }
}

pub fn exact(e: &ExactP2) -> Value {
    match e {
        ExactP2::Exact(v) => json!(v),
        ExactP2::Infinite => json!("infinity"),
        ExactP2::Interval { lower, upper } => json!({
            "lower": lower.map(p2_value),
            "upper": upper,
        }),
    }
}

fn hypotheses(h: &Hypotheses) -> Value {
    json!({
        "orderable": h.orderable,
        "toric": h.toric,
        "family_complete": h.family_complete,
        "edge_shapes": h.edge_shapes,
    })
}

/// The full report, with the three headline values at the top level.
pub fn p2_report(ext: &ExtensionSpec, r: &P2Report) -> Value {
    json!({
        "chordal_base": r.chordal_base,
        "order": order(ext, &r.order),
        "lower": r.lower.as_ref().map(|l| p2_value(l.value)),
        "upper": r.upper.value(),
        "exact": exact(&r.exact),
        "hypotheses": hypotheses(&r.hypotheses),
        "lower_detail": r.lower.as_ref().map(|l| lower(ext, l)),
        "upper_detail": upper(ext, &r.upper),
    })
}
