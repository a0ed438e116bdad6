use std::path::PathBuf;

use scrollex::fixtures::{glued, hex_ext, spiral, spiral_untwisted};
use scrollex::{validate_extension, CliqueComplex, ExtensionSpec, Graph, RawMatrix};

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    extensions: Vec<RawMatrix>,
}

fn load(name: &str) -> ExtensionSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let doc: Document = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let g = Graph::build(&doc.vertices, &doc.edges).unwrap();
    validate_extension(&CliqueComplex::new(g), &doc.extensions).unwrap()
}

fn assert_same(a: &ExtensionSpec, b: &ExtensionSpec) {
    assert_eq!(a.graph(), b.graph());
    assert_eq!(a.base(), b.base());
    assert_eq!(a.matrices(), b.matrices());
}

#[test]
fn shipped_files_match_builders() {
    assert_same(&load("glued.json"), &glued());
    assert_same(&load("hex_ext.json"), &hex_ext());
    assert_same(&load("spiral.json"), &spiral());
    assert_same(&load("spiral_untwisted.json"), &spiral_untwisted());
}
