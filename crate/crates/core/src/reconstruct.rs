//! Tree reconstruction from segment maps, strict betweenness and non-strict
//! betweenness. Each pipeline has a constructive variant (root, induced
//! order, minimal elements, recursion) and a naive adjacency variant, and
//! every success is certified by re-deriving the input from the tree.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::axioms::NotStrict;
use crate::bits;
use crate::model::{ModelError, SegmentMap, TernaryRelation, Tree, VertexId, VertexTable};
use crate::treeops::{
    interval_function, strict_betweenness, tree_betweenness, tree_from_order, OrderDefect,
    OrderError, OrderView,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Constructive,
    Naive,
}

impl Method {
    pub const BOTH: [Method; 2] = [Method::Constructive, Method::Naive];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Constructive => "constructive",
            Method::Naive => "naive",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "constructive" => Ok(Method::Constructive),
            "naive" => Ok(Method::Naive),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub tree: Tree,
    pub method: Method,
    /// Root used by the constructive method.
    pub root: Option<VertexId>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("root id {root} out of range for {len} vertices")]
    RootOutOfRange { root: VertexId, len: usize },
    #[error(transparent)]
    NotStrict(#[from] NotStrict),
    #[error("induced order: {0}")]
    Order(#[from] OrderError),
    #[error("partition failure: {rendered} lies in {} classes", classes.len())]
    Partition {
        vertex: VertexId,
        classes: Vec<VertexId>,
        rendered: String,
    },
    #[error("not a tree: {0}")]
    Structure(#[from] ModelError),
    #[error("degenerate part: ({rendered}) is {}", if *missing { "missing" } else { "not allowed" })]
    Shape {
        triple: [VertexId; 3],
        missing: bool,
        rendered: String,
    },
    #[error("verification mismatch at ({rendered})")]
    Mismatch {
        witness: Vec<VertexId>,
        rendered: String,
    },
}

impl ReconstructError {
    pub fn is_mismatch(&self) -> bool {
        matches!(self, ReconstructError::Mismatch { .. })
    }

    /// Ids of the offending tuple, when the failure has one.
    pub fn witness(&self) -> Option<Vec<VertexId>> {
        match self {
            ReconstructError::RootOutOfRange { .. } | ReconstructError::Structure(_) => None,
            ReconstructError::NotStrict(e) => Some(vec![e.u, e.v, e.w]),
            ReconstructError::Order(e) => Some(e.witness.clone()),
            ReconstructError::Partition {
                vertex, classes, ..
            } => Some(
                std::iter::once(*vertex)
                    .chain(classes.iter().copied())
                    .collect(),
            ),
            ReconstructError::Shape { triple, .. } => Some(triple.to_vec()),
            ReconstructError::Mismatch { witness, .. } => Some(witness.clone()),
        }
    }
}

fn mismatch(vertices: &VertexTable, witness: Vec<VertexId>) -> ReconstructError {
    ReconstructError::Mismatch {
        rendered: vertices.render(&witness),
        witness,
    }
}

fn pick_root(vertices: &VertexTable, root: Option<VertexId>) -> Result<VertexId, ReconstructError> {
    let root = root.unwrap_or(0);
    if root >= vertices.len() {
        return Err(ReconstructError::RootOutOfRange {
            root,
            len: vertices.len(),
        });
    }
    Ok(root)
}

fn finish(tree: Tree, method: Method, root: VertexId) -> ReconstructionResult {
    ReconstructionResult {
        tree,
        method,
        root: (method == Method::Constructive).then_some(root),
        verified: true,
    }
}

/// Rebuilds the tree whose interval function is `map`.
pub fn tree_from_segments(
    map: &SegmentMap,
    method: Method,
    root: Option<VertexId>,
) -> Result<ReconstructionResult, ReconstructError> {
    let vertices = map.vertices();
    let root = pick_root(vertices, root)?;
    let n = map.len();
    let tree = match method {
        Method::Constructive => tree_from_order(&OrderView::from_segments(map, root))?,
        Method::Naive => {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| {
                    let row = map.row(u, v);
                    bits::count_ones(row) == 2 && bits::test_bit(row, u) && bits::test_bit(row, v)
                });
            Tree::from_ids(vertices.clone(), edges.collect::<Vec<_>>())?
        }
    };
    let derived = interval_function(&tree);
    if &derived != map {
        let pair = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .find(|&(u, v)| derived.row(u, v) != map.row(u, v))
            .expect("maps differ somewhere");
        return Err(mismatch(vertices, vec![pair.0, pair.1]));
    }
    Ok(finish(tree, method, root))
}

/// Rebuilds the tree whose strict betweenness is `relation`.
pub fn tree_from_strict(
    relation: &TernaryRelation,
    method: Method,
    root: Option<VertexId>,
) -> Result<ReconstructionResult, ReconstructError> {
    crate::axioms::require_strict(relation)?;
    let vertices = relation.vertices();
    let root = pick_root(vertices, root)?;
    let tree = match method {
        Method::Constructive => Tree::from_ids(vertices.clone(), strict_edges(relation, root)?)?,
        Method::Naive => {
            let n = relation.len();
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
                .filter(|&(u, w)| bits::count_ones(relation.between(u, w)) == 0);
            Tree::from_ids(vertices.clone(), edges.collect::<Vec<_>>())?
        }
    };
    verify_relation(relation, &strict_betweenness(&tree))?;
    Ok(finish(tree, method, root))
}

fn verify_relation(
    input: &TernaryRelation,
    derived: &TernaryRelation,
) -> Result<(), ReconstructError> {
    if input == derived {
        return Ok(());
    }
    let n = input.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if input.contains(u, v, w) != derived.contains(u, v, w) {
                    return Err(mismatch(input.vertices(), vec![u, v, w]));
                }
            }
        }
    }
    unreachable!("relations differ somewhere")
}

/// Root-order recursion: with `a ≺ b` iff `(r, a, b) ∈ B`, the minimal
/// elements of `V - {r}` are the children of `r`, and each class
/// `{r_i} ∪ {b : r_i ≺ b}` is solved with `r_i` as its root.
fn strict_edges(
    relation: &TernaryRelation,
    root: VertexId,
) -> Result<Vec<(VertexId, VertexId)>, ReconstructError> {
    let vertices = relation.vertices();
    let n = relation.len();
    let words = bits::words_for(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut members = vec![0u64; words];
    (0..n).for_each(|x| bits::set_bit(&mut members, x));
    let mut stack = vec![(root, members)];
    let mut down = vec![0u64; n * words];
    while let Some((r, members)) = stack.pop() {
        let mut rest = members;
        bits::clear_bit(&mut rest, r);
        let rest_ids: Vec<VertexId> = bits::Ones::new(&rest).collect();
        if rest_ids.is_empty() {
            continue;
        }
        // down(b) = {a ∈ rest : a ≺ b}
        for &b in &rest_ids {
            let row = &mut down[b * words..(b + 1) * words];
            for ((d, p), m) in row.iter_mut().zip(relation.between(r, b)).zip(&rest) {
                *d = p & m;
            }
        }
        for &b in &rest_ids {
            let down_b = &down[b * words..(b + 1) * words];
            for a in bits::Ones::new(down_b) {
                let down_a = &down[a * words..(a + 1) * words];
                if let Some(x) = bits::first_difference(down_a, down_b) {
                    let witness = vec![x, a, b];
                    return Err(
                        OrderError::new(vertices, OrderDefect::NotTransitive, witness).into(),
                    );
                }
            }
        }
        let mut minimal = vec![0u64; words];
        for &b in &rest_ids {
            if down[b * words..(b + 1) * words].iter().all(|&w| w == 0) {
                bits::set_bit(&mut minimal, b);
            }
        }
        let minimal_ids: Vec<VertexId> = bits::Ones::new(&minimal).collect();
        let mut classes: Vec<Vec<u64>> = minimal_ids
            .iter()
            .map(|&m| {
                let mut c = vec![0u64; words];
                bits::set_bit(&mut c, m);
                c
            })
            .collect();
        for &b in &rest_ids {
            if bits::test_bit(&minimal, b) {
                continue;
            }
            let owners: Vec<VertexId> = bits::Ones::new(&down[b * words..(b + 1) * words])
                .filter(|&a| bits::test_bit(&minimal, a))
                .collect();
            if owners.len() != 1 {
                let mut witness = vec![b];
                witness.extend(&owners);
                return Err(ReconstructError::Partition {
                    vertex: b,
                    rendered: vertices.render(&witness),
                    classes: owners,
                });
            }
            let i = minimal_ids
                .binary_search(&owners[0])
                .expect("owner is minimal");
            bits::set_bit(&mut classes[i], b);
        }
        for (&child, class) in minimal_ids.iter().zip(classes) {
            edges.push((r, child));
            stack.push((child, class));
        }
    }
    Ok(edges)
}

/// Splits `C` into its triples with a repeated component (`A`) and the rest (`B`).
pub fn split_nonstrict(relation: &TernaryRelation) -> (TernaryRelation, TernaryRelation) {
    let vertices = relation.vertices().clone();
    let mut degenerate = TernaryRelation::builder(vertices.clone());
    let mut strict = TernaryRelation::builder(vertices);
    for (u, v, w) in relation.triples() {
        if u == v || v == w || u == w {
            degenerate.insert(u, v, w);
        } else {
            strict.insert(u, v, w);
        }
    }
    (degenerate.build(), strict.build())
}

/// Rebuilds the tree whose tree betweenness is `relation`.
pub fn tree_from_nonstrict(
    relation: &TernaryRelation,
    method: Method,
    root: Option<VertexId>,
) -> Result<ReconstructionResult, ReconstructError> {
    let (degenerate, strict) = split_nonstrict(relation);
    let n = relation.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let required = u == v || v == w;
                let repeated = required || u == w;
                if !repeated {
                    continue;
                }
                let present = degenerate.contains(u, v, w);
                if present != required {
                    return Err(ReconstructError::Shape {
                        triple: [u, v, w],
                        missing: required,
                        rendered: relation.vertices().render(&[u, v, w]),
                    });
                }
            }
        }
    }
    let result = tree_from_strict(&strict, method, root)?;
    verify_relation(relation, &tree_betweenness(&result.tree))?;
    Ok(result)
}
