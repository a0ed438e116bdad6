//! Binomial edge ideals arising from clique complexes extended by rational normal scrolls,
//! and bounds for their linearity invariant p2.

pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod grobner;
pub mod homology;
pub mod linalg;
pub mod order;
pub mod p2;
pub mod scroll;

pub use error::{Error, ExtensionErrorKind, ExtensionSite, Result};
pub use graph::{
    chordless_cycles, is_chordal, maximal_cliques, shortest_chordless_cycles, CliqueComplex, Cycle,
    CycleSearch, Edge, Graph, Vertex, DEFAULT_CYCLE_CAP,
};
pub use homology::{
    betti_table, betti_table_with, clique_homology_rank, hochster_betti, is_2_linear_monomial,
    p2_from_table, p2_monomial, poligon_betti, reduced_homology_rank, stanley_reisner_generators,
    BettiOptions, BettiTable, P2Result, P2Value, DEFAULT_MAX_VERTICES,
};
pub use linalg::FieldSpec;
pub use scroll::{
    generators, primary_components, toricity_gate, validate_extension, ExtensionSpec, GeneratorSystem,
    Minor, PrimaryComponent, RawBlock, RawMatrix, ScrollBlock, ScrollMatrix, Toricity,
};
pub use order::{
    check_admissible_order, find_admissible_order, is_admissible_permutation, pi_star, scrollify, vertex_order,
    ColumnPermutation, HeadsDigraph, OrderOutcome, VarOrder,
};
pub use grobner::{
    basis_order, buchberger_is_groebner, initial_complex, initial_complex_from_order, lex_compare, Binomial,
    Generator, GroebnerVerdict, InitialComplex, LexRing, Monomial, Polynomial, SPolynomial,
};
pub use p2::{
    c_tilde, classify_edge, exact_p2, homology_witness, initial_graph, is_2_linear_extension, lower_bound,
    upper_bound, virtual_edges, virtual_minimal_cycles, Analysis, EdgeClass, EdgeKind, ExactP2, Hypotheses,
    LowerBound, P2Report, UpperBound, UpperReason, VirtualCycle,
};
