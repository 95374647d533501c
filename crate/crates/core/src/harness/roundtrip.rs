//! Tree → object → tree for every pipeline, method and chosen root.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::emit_tree;
use crate::model::{Tree, VertexId};
use crate::reconstruct::{tree_from_nonstrict, tree_from_segments, tree_from_strict, Method};
use crate::treeops::{
    enumerate_labeled_trees, interval_function, random_tree, strict_betweenness, tree_betweenness,
};

pub const EXHAUSTIVE_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pipeline {
    Segments,
    Strict,
    Nonstrict,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [Pipeline::Segments, Pipeline::Strict, Pipeline::Nonstrict];
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pipeline::Segments => "segments",
            Pipeline::Strict => "strict",
            Pipeline::Nonstrict => "nonstrict",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripFailure {
    pub tree: Tree,
    pub pipeline: Pipeline,
    pub method: Method,
    pub root: Option<VertexId>,
    pub reason: String,
}

impl fmt::Display for RoundtripFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = self.root.map_or("-".to_string(), |r| {
            self.tree.vertices().label(r).to_string()
        });
        let edges: Vec<String> = self
            .tree
            .edges()
            .iter()
            .map(|&(a, b)| self.tree.vertices().render(&[a, b]).replace(' ', "-"))
            .collect();
        write!(
            f,
            "failure: pipeline {} method {} root {root} edges [{}]: {}",
            self.pipeline,
            self.method,
            edges.join(" "),
            self.reason
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundtripSummary {
    pub trees: usize,
    pub runs: usize,
    pub failures: Vec<RoundtripFailure>,
}

impl RoundtripSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RoundtripSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "trees: {}, failures: {}",
            self.trees,
            self.failures.len()
        )?;
        writeln!(f, "runs: {}", self.runs)?;
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundtripError {
    #[error("exhaustive round trip supports 1 <= n <= {EXHAUSTIVE_MAX}, got {0}")]
    BadBound(usize),
    #[error("random trees need at least one vertex")]
    EmptyTree,
}

/// Roots tried by the constructive method: the first and last vertex.
fn roots(tree: &Tree) -> Vec<VertexId> {
    let mut r = vec![0, tree.len() - 1];
    r.dedup();
    r
}

/// Runs every pipeline on `tree` with both methods and each root.
pub fn roundtrip_tree(tree: &Tree, summary: &mut RoundtripSummary) {
    let segments = interval_function(tree);
    let strict = strict_betweenness(tree);
    let nonstrict = tree_betweenness(tree);
    let roots = roots(tree);
    for pipeline in Pipeline::ALL {
        for method in Method::BOTH {
            for root in roots.iter().copied().map(Some) {
                let result = match pipeline {
                    Pipeline::Segments => tree_from_segments(&segments, method, root),
                    Pipeline::Strict => tree_from_strict(&strict, method, root),
                    Pipeline::Nonstrict => tree_from_nonstrict(&nonstrict, method, root),
                };
                summary.runs += 1;
                let reason = match result {
                    Ok(r) if r.tree == *tree && r.verified => continue,
                    Ok(r) => format!("rebuilt a different tree:\n{}", emit_tree(&r.tree)),
                    Err(e) => e.to_string(),
                };
                summary.failures.push(RoundtripFailure {
                    tree: tree.clone(),
                    pipeline,
                    method,
                    root,
                    reason,
                });
            }
        }
    }
    summary.trees += 1;
}

/// Every labeled tree with `1..=n_max` vertices.
pub fn roundtrip_exhaustive(n_max: usize) -> Result<RoundtripSummary, RoundtripError> {
    if !(1..=EXHAUSTIVE_MAX).contains(&n_max) {
        return Err(RoundtripError::BadBound(n_max));
    }
    let mut summary = RoundtripSummary::default();
    for n in 1..=n_max {
        for tree in enumerate_labeled_trees(n).expect("bound checked above") {
            roundtrip_tree(&tree, &mut summary);
        }
    }
    Ok(summary)
}

/// `count` uniform random trees on `size` vertices.
pub fn roundtrip_random(
    count: usize,
    size: usize,
    seed: u64,
) -> Result<RoundtripSummary, RoundtripError> {
    if size == 0 {
        return Err(RoundtripError::EmptyTree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = RoundtripSummary::default();
    for _ in 0..count {
        roundtrip_tree(&random_tree(size, &mut rng), &mut summary);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive() {
        let s = roundtrip_exhaustive(5).unwrap();
        assert_eq!(s.trees, 1 + 1 + 3 + 16 + 125);
        assert!(s.passed(), "{s}");
        assert!(s.to_string().starts_with("trees: 146, failures: 0\n"));
        // n = 1 has a single root.
        assert_eq!(s.runs, 3 * 2 + 3 * 2 * 2 * 145);
    }

    #[test]
    fn tiny_cases() {
        assert_eq!(roundtrip_exhaustive(3).unwrap().trees, 5);
        let empty = roundtrip_random(0, 4, 1).unwrap();
        assert_eq!((empty.trees, empty.passed()), (0, true));
    }

    #[test]
    fn bounds() {
        assert_eq!(roundtrip_exhaustive(0), Err(RoundtripError::BadBound(0)));
        assert_eq!(roundtrip_exhaustive(9), Err(RoundtripError::BadBound(9)));
        assert_eq!(roundtrip_random(1, 0, 1), Err(RoundtripError::EmptyTree));
    }

    #[test]
    fn random_is_seeded() {
        let a = roundtrip_random(5, 12, 7).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a, roundtrip_random(5, 12, 7).unwrap());
    }
}
