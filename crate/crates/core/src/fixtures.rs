//! Small hand-built extensions used by tests, benches and documentation.

use crate::graph::{CliqueComplex, Graph};
use crate::scroll::{validate_extension, ExtensionSpec, RawBlock, RawMatrix};

/// Builds a raw matrix from string slices.
pub fn raw_matrix(facet: &[&str], x0: &str, blocks: &[(&str, &[&str])]) -> RawMatrix {
    RawMatrix {
        facet: facet.iter().map(|s| s.to_string()).collect(),
        x0: x0.to_string(),
        blocks: blocks
            .iter()
            .map(|(x, y)| RawBlock { x: x.to_string(), y: y.iter().map(|s| s.to_string()).collect() })
            .collect(),
    }
}

fn build(vertices: &[&str], edges: &[(&str, &str)], raw: &[RawMatrix]) -> ExtensionSpec {
    let g = Graph::build(vertices, edges).expect("fixture graph is valid");
    validate_extension(&CliqueComplex::new(g), raw).expect("fixture extension is valid")
}

pub fn glued_graph() -> Graph {
    Graph::build(
        &["a", "b", "c", "d", "e"],
        &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
    )
    .expect("fixture graph is valid")
}

/// A triangle and a square glued along an edge, with one new variable on the
/// triangle and two on the far edge of the square.
pub fn glued() -> ExtensionSpec {
    let raw = [
        raw_matrix(&["a", "b", "c"], "a", &[("c", &["z"])]),
        raw_matrix(&["d", "e"], "e", &[("d", &["w", "x"])]),
    ];
    validate_extension(&CliqueComplex::new(glued_graph()), &raw).expect("fixture extension is valid")
}

/// A square with one edge stretched by two new variables into a hexagon.
pub fn hex_ext() -> ExtensionSpec {
    build(
        &["1", "2", "3", "4"],
        &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")],
        &[raw_matrix(&["1", "2"], "1", &[("2", &["u", "v"])])],
    )
}

fn four_triangles(h: &'static str) -> (Vec<&'static str>, Vec<(&'static str, &'static str)>) {
    let vertices = vec!["a", "b", "c", "d", "e", "f", "g", h];
    let edges = vec![
        ("a", "b"), ("b", "e"), ("a", "e"),
        ("a", "d"), ("d", h), ("a", h),
        ("c", "d"), ("d", "g"), ("c", "g"),
        ("b", "c"), ("c", "f"), ("b", "f"),
    ];
    (vertices, edges)
}

/// Four triangles around a square whose heads chase each other: no admissible order.
pub fn spiral() -> ExtensionSpec {
    let (vs, es) = four_triangles("h");
    build(
        &vs,
        &es,
        &[
            raw_matrix(&["a", "e", "b"], "a", &[("b", &["x", "y"]), ("e", &["z"])]),
            raw_matrix(&["d", "h", "a"], "d", &[("a", &["r", "s"]), ("h", &["q"])]),
            raw_matrix(&["c", "g", "d"], "c", &[("g", &["u"]), ("d", &["t"])]),
            raw_matrix(&["b", "f", "c"], "b", &[("c", &["w"]), ("f", &["v"])]),
        ],
    )
}

/// The spiral with its second matrix rewritten around a different head, which makes it orderable.
pub fn spiral_untwisted() -> ExtensionSpec {
    let (vs, es) = four_triangles("q");
    build(
        &vs,
        &es,
        &[
            raw_matrix(&["a", "e", "b"], "a", &[("b", &["x", "y"]), ("e", &["z"])]),
            raw_matrix(&["d", "q", "a"], "a", &[("d", &["s", "r"]), ("q", &["h"])]),
            raw_matrix(&["c", "g", "d"], "c", &[("g", &["u"]), ("d", &["t"])]),
            raw_matrix(&["b", "f", "c"], "b", &[("c", &["w"]), ("f", &["v"])]),
        ],
    )
}
