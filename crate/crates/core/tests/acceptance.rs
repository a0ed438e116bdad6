//! Acceptance suite. Runs without the libtest harness so every criterion reports a line.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;
use scrollex::corpus::{connected_graphs, random_graph, rng};
use scrollex::fixtures::{glued, raw_matrix, spiral, spiral_untwisted};
use scrollex::{
    betti_table, buchberger_is_groebner, c_tilde, find_admissible_order, generators, homology_witness,
    initial_complex_from_order, is_2_linear_monomial, is_chordal, p2_from_table, p2_monomial, poligon_betti,
    toricity_gate, validate_extension, Analysis, BettiTable, CliqueComplex, EdgeKind, ExactP2, FieldSpec, Graph,
    LexRing, Minor, Monomial, OrderOutcome, P2Value, UpperBound, VarOrder, Vertex, DEFAULT_CYCLE_CAP,
};

use common::{
    admissibly_ordered, bfs_substitution, brute_order, extension_corpus, induced_cycles, initial_graph_oracle, Case,
};

struct Verdict {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict { ok: false, detail: detail.into() }
}

fn cycle_graph(n: usize) -> Graph {
    Graph::numbered(n, (0..n).map(|i| (i, (i + 1) % n)))
}

struct GraphCase {
    graph: Graph,
    table: BettiTable,
}

fn graph_corpus() -> Vec<GraphCase> {
    let mut graphs = connected_graphs(7);
    let mut r = rng(77);
    for _ in 0..300 {
        let n = r.gen_range(8..=9);
        let p = r.gen_range(0.2..0.6);
        graphs.push(random_graph(&mut r, n, p));
    }
    graphs
        .into_iter()
        .map(|graph| {
            let table = betti_table(&graph, FieldSpec::Rationals).expect("small graphs are within the guard");
            GraphCase { graph, table }
        })
        .collect()
}

fn criterion_1(gs: &[GraphCase], built: Duration) -> Verdict {
    let start = Instant::now();
    let connected = gs.iter().filter(|c| c.graph.len() <= 7).count();
    if connected != 996 {
        return fail(format!("expected 996 connected graphs on at most 7 vertices, found {connected}"));
    }
    for (k, c) in gs.iter().enumerate() {
        let direct = p2_monomial(&c.graph).unwrap();
        let from_table = p2_from_table(&c.table, 2);
        if direct != from_table {
            return fail(format!("graph {k}: direct {direct:?} vs table {from_table:?}"));
        }
        if let P2Value::Finite(p) = direct.p2 {
            let beta = c.table.get(p as usize, p as usize + 3);
            if direct.witness_count != beta {
                return fail(format!("graph {k}: witness {} vs beta {beta}", direct.witness_count));
            }
        }
        let cycles = induced_cycles(&c.graph);
        let shortest = cycles.iter().map(|m| m.count_ones()).min();
        let expected = match shortest {
            None => (P2Value::Infinite, 0),
            Some(l) => (P2Value::Finite(l as u64 - 3), cycles.iter().filter(|m| m.count_ones() == l).count() as u64),
        };
        if (direct.p2, direct.witness_count) != expected {
            return fail(format!("graph {k}: {direct:?} vs exhaustive cycle search {expected:?}"));
        }
    }
    let total = built + start.elapsed();
    if total > Duration::from_secs(300) {
        return fail(format!("took {total:?}"));
    }
    pass(format!("{} graphs in {:.1?}", gs.len(), total))
}

fn criterion_2(gs: &[GraphCase]) -> Verdict {
    let mut chordal = 0;
    for (k, c) in gs.iter().enumerate() {
        let ch = is_chordal(&c.graph);
        chordal += usize::from(ch);
        if ch != c.table.is_linear(2) || ch != is_2_linear_monomial(&c.graph) {
            return fail(format!("graph {k}: chordal {ch} but table linear {}", c.table.is_linear(2)));
        }
    }
    pass(format!("{chordal} chordal of {}", gs.len()))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    for n in 4..=6 {
        for s in 0..=3 {
            let closed = poligon_betti(n, s).unwrap();
            let swept = betti_table(&cycle_graph(n + s), FieldSpec::Rationals).unwrap();
            if closed != swept {
                return fail(format!("n={n} s={s}: closed form differs from the sweep"));
            }
            if p2_from_table(&swept, 2).p2 != P2Value::Finite((n + s - 3) as u64) {
                return fail(format!("n={n} s={s}: p2 differs"));
            }
            let top = swept.entries().last().unwrap();
            if top.1 != 1 {
                return fail(format!("n={n} s={s}: top entry {top:?}"));
            }
            if s > 0 {
                let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                let g = Graph::from_pairs(names, (0..n).map(|i| (Vertex(i), Vertex((i + 1) % n)))).unwrap();
                let ys: Vec<String> = (0..s).map(|k| format!("y{k}")).collect();
                let ys: Vec<&str> = ys.iter().map(String::as_str).collect();
                let ext =
                    validate_extension(&CliqueComplex::new(g), &[raw_matrix(&["x1", "x2"], "x1", &[("x2", &ys)])]).unwrap();
                let initial = Analysis::new(&ext, DEFAULT_CYCLE_CAP).unwrap().initial.graph;
                if betti_table(&initial, FieldSpec::Rationals).unwrap() != closed {
                    return fail(format!("n={n} s={s}: stretched cycle differs from the closed form"));
                }
            }
        }
    }
    if start.elapsed() > Duration::from_secs(60) {
        return fail(format!("took {:?}", start.elapsed()));
    }
    pass(format!("12 shapes in {:.1?}", start.elapsed()))
}

fn generic_scroll(n: usize) -> Result<(), String> {
    let ring = LexRing::new(VarOrder::new((0..2 * n).map(Vertex).collect(), 2 * n).unwrap());
    let x = |i: usize| Vertex(i);
    let y = |i: usize| Vertex(n + i);
    let mut basis = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let m = Minor { matrix: 0, columns: (u, v), first: (x(u), y(v)), second: (x(v), y(u)) };
            basis.push(ring.minor(&m).map_err(|e| e.to_string())?);
        }
    }
    if !ring.is_groebner(&basis).map_err(|e| e.to_string())?.is_yes() {
        return Err(format!("2x{n}: not a Groebner basis"));
    }
    let leads: BTreeSet<Monomial> = basis.iter().map(|p| p.lead().unwrap().0.clone()).collect();
    let expected: BTreeSet<Monomial> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| Monomial::product(&[x(i), y(j)]))).collect();
    if leads != expected {
        return Err(format!("2x{n}: leads differ"));
    }
    // The initial ideal is the Stanley-Reisner ideal of the graph missing exactly the lead pairs.
    let mut pairs = Vec::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            if !leads.contains(&Monomial::product(&[Vertex(a), Vertex(b)])) {
                pairs.push((a, b));
            }
        }
    }
    let g = Graph::numbered(2 * n, pairs);
    let linear = betti_table(&g, FieldSpec::Rationals).map_err(|e| e.to_string())?.is_linear(2);
    if !linear || !induced_cycles(&g).is_empty() {
        return Err(format!("2x{n}: initial ideal is not 2-linear"));
    }
    Ok(())
}

fn scroll_shaped(facet: usize, lens: &[usize]) -> Result<(), String> {
    let names: Vec<String> = (0..facet).map(|i| format!("v{i}")).collect();
    let pairs = (0..facet).flat_map(|a| (a + 1..facet).map(move |b| (Vertex(a), Vertex(b))));
    let g = Graph::from_pairs(names.clone(), pairs).unwrap();
    let mut fresh = 0;
    let ys: Vec<Vec<String>> = lens
        .iter()
        .map(|&l| {
            (0..l)
                .map(|_| {
                    fresh += 1;
                    format!("y{fresh}")
                })
                .collect()
        })
        .collect();
    let ys_ref: Vec<Vec<&str>> = ys.iter().map(|v| v.iter().map(String::as_str).collect()).collect();
    let blocks: Vec<(&str, &[&str])> = (0..lens.len()).map(|j| (names[j + 1].as_str(), ys_ref[j].as_slice())).collect();
    let facet_names: Vec<&str> = names.iter().map(String::as_str).collect();
    let ext = validate_extension(&CliqueComplex::new(g), &[raw_matrix(&facet_names, "v0", &blocks)])
        .map_err(|e| e.to_string())?;
    let a = Analysis::new(&ext, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?;
    let vo = a.var_order().map_err(|e| e.to_string())?;
    let verdict = buchberger_is_groebner(&generators(&ext), &vo).map_err(|e| e.to_string())?;
    if !verdict.is_yes() {
        return Err(format!("facet {facet}, blocks {lens:?}: {verdict:?}"));
    }
    Ok(())
}

fn criterion_4() -> Verdict {
    for n in 2..=6 {
        if let Err(e) = generic_scroll(n) {
            return fail(e);
        }
    }
    let shapes: &[(usize, &[usize])] = &[
        (2, &[1]),
        (2, &[5]),
        (3, &[2, 3]),
        (3, &[0, 4]),
        (4, &[1, 2, 2]),
        (4, &[0, 1, 3]),
        (5, &[1, 1, 1, 2]),
        (6, &[1, 1, 1, 1, 1]),
    ];
    for &(f, lens) in shapes {
        if let Err(e) = scroll_shaped(f, lens) {
            return fail(e);
        }
    }
    pass(format!("generic 2x2..2x6 and {} scroll shapes", shapes.len()))
}

fn criterion_5(corpus: &[Case]) -> Verdict {
    let mut checked = 0;
    for c in corpus.iter().filter(|c| !["glued", "hex", "spiral", "spiral-untwisted"].contains(&c.label.as_str())) {
        if c.ext.graph().len() > 12 {
            continue;
        }
        let a = Analysis::new(&c.ext, DEFAULT_CYCLE_CAP).unwrap();
        let Ok(vo) = a.var_order() else { continue };
        let verdict = buchberger_is_groebner(&generators(&c.ext), &vo).unwrap();
        if !verdict.is_yes() {
            return fail(format!("{}: {verdict:?}", c.label));
        }
        let leads = initial_complex_from_order(&c.ext, &vo).unwrap();
        if leads.deleted != a.initial.deleted || initial_graph_oracle(&c.ext).1 != a.initial.deleted {
            return fail(format!("{}: deletion routes differ", c.label));
        }
        checked += 1;
    }
    if checked < 20 {
        return fail(format!("only {checked} orderable instances"));
    }
    pass(format!("{checked} instances"))
}

fn criterion_6() -> Verdict {
    let ext = glued();
    let r = Analysis::new(&ext, DEFAULT_CYCLE_CAP).unwrap().report().unwrap();
    let lower = r.lower.as_ref().map(|l| l.value);
    let UpperBound::Value { value, ctilde, .. } = &r.upper else {
        return fail(format!("upper bound missing: {:?}", r.upper));
    };
    let h = homology_witness(&ext, ctilde, FieldSpec::Rationals).unwrap();
    let gate = toricity_gate(&ext).passes();
    let got = (lower, *value, r.exact.clone(), ctilde.len(), h, gate);
    let want = (Some(P2Value::Finite(4)), 4, ExactP2::Exact(4), 7, 1, true);
    if got != want {
        return fail(format!("{got:?}"));
    }
    pass("lower = upper = exact = 4, |C~| = 7, witness rank 1, gate passes")
}

fn facet_union_is_chordal(c: &Case) -> bool {
    let mut vs: Vec<Vertex> =
        c.ext.matrices().iter().flat_map(|m| c.ext.base().facet(m.facet).iter().copied()).collect();
    vs.sort();
    vs.dedup();
    is_chordal(&c.ext.base_graph().induced(&vs).unwrap())
}

fn criterion_7(corpus: &[Case]) -> Verdict {
    let mut compared = 0;
    let mut unorderable = 0;
    let mut second_condition_matters = 0;
    for c in corpus {
        let ms = c.ext.matrices();
        let found = find_admissible_order(ms);
        if let OrderOutcome::Order(o) = &found {
            let seq: Vec<_> = o.iter().map(|&i| &ms[i]).collect();
            if !admissibly_ordered(&seq, true) {
                return fail(format!("{}: returned order {o:?} is not admissible", c.label));
            }
        }
        if ms.len() <= 5 {
            compared += 1;
            let brute = brute_order(ms, true);
            if brute.is_some() != found.order().is_some() {
                return fail(format!("{}: digraph says {found:?}, exhaustive search {brute:?}", c.label));
            }
            if brute.is_some() != brute_order(ms, false).is_some() {
                second_condition_matters += 1;
            }
        }
        if found.order().is_none() {
            unorderable += 1;
            if ms.len() <= 3 {
                return fail(format!("{}: {} matrices but unorderable", c.label, ms.len()));
            }
            if facet_union_is_chordal(c) {
                return fail(format!("{}: chordal on the family but unorderable", c.label));
            }
            if c.label.starts_with("cycle-") {
                return fail(format!("{}: cycle extension unorderable", c.label));
            }
        }
    }
    if unorderable == 0 {
        return fail("corpus has no unorderable family");
    }
    if find_admissible_order(spiral().matrices()) != OrderOutcome::Cycle(vec![0, 1, 2, 3]) {
        return fail("spiral witness");
    }
    if find_admissible_order(spiral_untwisted().matrices()) != OrderOutcome::Order(vec![0, 3, 2, 1]) {
        return fail("untwisted spiral order");
    }
    pass(format!(
        "{compared} families checked exhaustively, {unorderable} unorderable, second condition decisive in {second_condition_matters}"
    ))
}

fn criterion_8(corpus: &[Case]) -> Verdict {
    let mut sandwiched = 0;
    let mut certified = 0;
    let mut formula_vs_initial = Vec::new();
    for c in corpus {
        let r = Analysis::new(&c.ext, DEFAULT_CYCLE_CAP).unwrap().report().unwrap();
        let Some(l) = &r.lower else { continue };
        if l.value != l.initial.p2 {
            formula_vs_initial.push(c.label.clone());
        }
        if let Some(u) = r.upper.value() {
            sandwiched += 1;
            if l.value > P2Value::Finite(u) || l.initial.p2 > P2Value::Finite(u) {
                return fail(format!("{}: lower {:?} / {:?} above upper {u}", c.label, l.value, l.initial.p2));
            }
        }
        if r.hypotheses.all() && !r.chordal_base {
            certified += 1;
            let u = r.upper.value();
            if r.exact != ExactP2::Exact(u.unwrap_or(u64::MAX)) || l.value.finite() != u {
                return fail(format!("{}: hypotheses hold but lower {:?}, upper {u:?}", c.label, l.value));
            }
        }
    }
    let note = if formula_vs_initial.is_empty() {
        String::new()
    } else {
        format!("; formula lower differs from initial p2 on {}", formula_vs_initial.join(","))
    };
    pass(format!("{sandwiched} sandwiched, {certified} certified exact{note}"))
}

fn criterion_9(corpus: &[Case]) -> Verdict {
    let mut edges = 0;
    let mut mismatches = Vec::new();
    for c in corpus {
        let a = Analysis::new(&c.ext, DEFAULT_CYCLE_CAP).unwrap();
        let (initial, _) = initial_graph_oracle(&c.ext);
        for vc in a.virtual_cycles().unwrap() {
            for ec in &vc.edge_classes {
                edges += 1;
                let bfs = match ec.kind {
                    EdgeKind::NonVirtual => bfs_substitution(&initial, &[], &vc.cycle, ec.edge),
                    _ => {
                        let f = ec.facet.unwrap();
                        bfs_substitution(&initial, c.ext.extended_facet(f), &vc.cycle, ec.edge)
                    }
                };
                if bfs != Some(ec.t) {
                    let names = vc.cycle.names(c.ext.graph()).concat();
                    mismatches.push(format!("{} [{names}] {:?} t={} bfs={bfs:?}", c.label, ec.kind, ec.t));
                }
            }
        }
    }
    if mismatches.is_empty() {
        pass(format!("{edges} edges"))
    } else {
        let shown: Vec<&String> = mismatches.iter().take(5).collect();
        fail(format!("{} of {edges} edges disagree, e.g. {shown:?}", mismatches.len()))
    }
}

fn criterion_10(corpus: &[Case]) -> Verdict {
    let mut checked = 0;
    for c in corpus {
        let a = Analysis::new(&c.ext, DEFAULT_CYCLE_CAP).unwrap();
        for vc in a.virtual_cycles().unwrap().iter().filter(|v| v.in_ctilde_family) {
            let ct = c_tilde(&c.ext, vc).unwrap();
            for field in [FieldSpec::Rationals, FieldSpec::prime(2).unwrap()] {
                let h = homology_witness(&c.ext, &ct, field).unwrap();
                if h < 1 {
                    return fail(format!("{}: rank {h} over {field:?}", c.label));
                }
            }
            checked += 1;
        }
    }
    pass(format!("{checked} substituted cycles"))
}

fn main() {
    let start = Instant::now();
    let graphs = graph_corpus();
    let built = start.elapsed();
    let corpus = extension_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("1 p2 from minimal cycles matches the Betti sweep", Box::new(|| criterion_1(&graphs, built))),
        ("2 chordal iff 2-linear", Box::new(|| criterion_2(&graphs))),
        ("3 polygon closed form", Box::new(criterion_3)),
        ("4 scroll minors are Groebner bases", Box::new(criterion_4)),
        ("5 Buchberger on random extensions", Box::new(|| criterion_5(&corpus))),
        ("6 triangle-square example end to end", Box::new(criterion_6)),
        ("7 admissible orders", Box::new(|| criterion_7(&corpus))),
        ("8 bound sandwich", Box::new(|| criterion_8(&corpus))),
        ("9 substitution lengths", Box::new(|| criterion_9(&corpus))),
        ("10 substituted cycles carry homology", Box::new(|| criterion_10(&corpus))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let v = run();
        failed += usize::from(!v.ok);
        println!("{} criterion {name}: {} ({:.1?})", if v.ok { "PASS" } else { "FAIL" }, v.detail, t.elapsed());
    }
    println!("{} of {} criteria passed; corpus of {} extensions", criteria.len() - failed, criteria.len(), corpus.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
