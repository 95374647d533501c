//! Interval functions and betweenness relations of finite trees.
//!
//! Three objects carry the same information as a tree on a vertex set `V`:
//! its segment map `[uv]` (the vertices on the `u`–`v` path), its strict
//! betweenness `B` and its non-strict betweenness `C`. This crate computes
//! all three, checks arbitrary maps and relations against the axioms that
//! characterize them (every failure comes with a concrete witness), and
//! rebuilds the tree from any of them with re-verification.
//!
//! ```
//! use treebetween::{build_tree, strict_betweenness, tree_from_strict, Method, VertexTable};
//!
//! let v = VertexTable::new(["a", "b", "c"]).unwrap();
//! let path = build_tree(v, [("a", "b"), ("b", "c")]).unwrap();
//! let b = strict_betweenness(&path);
//! assert!(b.contains(0, 1, 2));
//! let rebuilt = tree_from_strict(&b, Method::Constructive, None).unwrap();
//! assert_eq!(rebuilt.tree, path);
//! ```

mod bits;

pub mod axioms;
pub mod format;
pub mod harness;
pub mod model;
pub mod reconstruct;
pub mod treeops;

pub use axioms::{
    check_burigana_axioms, check_nonstrict_axioms, check_segment_axioms, check_segment_corollaries,
    check_strict_axioms, check_strict_derived, n_predicate, revalidate, AxiomReport, CheckOptions,
    NotStrict, ScanMode, Semantics, Subject,
};
pub use format::{emit_document, parse_document, Document, FormatError};
pub use model::{
    build_tree, Axiom, ModelError, RelationBuilder, SegmentMap, SegmentMapBuilder, TernaryRelation,
    Tree, VertexId, VertexTable, Violation,
};
pub use reconstruct::{
    split_nonstrict, tree_from_nonstrict, tree_from_segments, tree_from_strict, Method,
    ReconstructError, ReconstructionResult,
};
pub use treeops::{
    enumerate_labeled_trees, interval_function, path_between, prufer_decode, random_tree,
    strict_betweenness, tree_betweenness, tree_from_order, trees_equal, LabeledTrees, OrderError,
    OrderView,
};
