//! Objects derived from a tree: paths, the interval function, betweenness
//! relations, root-induced orders and the order-to-tree builder, plus
//! labeled-tree enumeration.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::bits::{self, BitMatrix};
use crate::model::{ModelError, SegmentMap, TernaryRelation, Tree, VertexId, VertexTable};

/// Enumeration bound used by [`enumerate_labeled_trees`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// Parent pointers of a traversal rooted at `source`, with the visit order.
struct Traversal {
    parent: Vec<VertexId>,
    order: Vec<VertexId>,
}

fn traverse(tree: &Tree, source: VertexId) -> Traversal {
    let n = tree.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[source] = source;
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in tree.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    Traversal { parent, order }
}

/// The unique simple path from `u` to `v`, both ends included.
pub fn path_between(tree: &Tree, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let t = traverse(tree, v);
    let mut path = vec![u];
    let mut x = u;
    while x != v {
        x = t.parent[x];
        path.push(x);
    }
    path
}

/// `[uv]_T` for every ordered pair, one traversal per source.
pub fn interval_function(tree: &Tree) -> SegmentMap {
    SegmentMap::from_table(tree.vertices().clone(), path_table(tree))
}

/// Row `u * n + x` = vertex set of the `u`-`x` path. This is simultaneously
/// the segment table and the betweenness cube layout.
fn path_table(tree: &Tree) -> BitMatrix {
    let n = tree.len();
    let mut table = BitMatrix::new(n * n, n);
    for u in 0..n {
        let t = traverse(tree, u);
        table.set(u * n + u, u, true);
        for &x in &t.order[1..] {
            table.copy_row(u * n + t.parent[x], u * n + x);
            table.set(u * n + x, x, true);
        }
    }
    table
}

/// Triples of pairwise distinct vertices `(x, y, z)` with `y` internal to the `x`-`z` path.
pub fn strict_betweenness(tree: &Tree) -> TernaryRelation {
    let n = tree.len();
    let mut cube = BitMatrix::new(n * n, n);
    for x in 0..n {
        let t = traverse(tree, x);
        for &z in &t.order[1..] {
            let p = t.parent[z];
            if p != x {
                cube.copy_row(x * n + p, x * n + z);
                cube.set(x * n + z, p, true);
            }
        }
    }
    TernaryRelation::from_cube(tree.vertices().clone(), cube)
}

/// Triples `(x, y, z)` with `y` on the `x`-`z` path.
pub fn tree_betweenness(tree: &Tree) -> TernaryRelation {
    TernaryRelation::from_cube(tree.vertices().clone(), path_table(tree))
}

pub fn trees_equal(a: &Tree, b: &Tree) -> bool {
    a == b
}

/// A binary relation on V induced from a root: `u ⪯ x` (non-strict) or `u ≺ x` (strict).
#[derive(Clone, PartialEq, Eq)]
pub struct OrderView {
    vertices: Arc<VertexTable>,
    root: VertexId,
    /// Row `u` holds every `x` with `u` below `x`.
    above: BitMatrix,
    strict: bool,
}

impl OrderView {
    pub fn new(
        vertices: impl Into<Arc<VertexTable>>,
        root: VertexId,
        strict: bool,
        below: impl Fn(VertexId, VertexId) -> bool,
    ) -> Self {
        let vertices = vertices.into();
        let n = vertices.len();
        let mut above = BitMatrix::new(n, n);
        for u in 0..n {
            for x in 0..n {
                if below(u, x) {
                    above.set(u, x, true);
                }
            }
        }
        OrderView {
            vertices,
            root,
            above,
            strict,
        }
    }

    /// `u ⪯ x` iff `u ∈ [rx]`.
    pub fn from_segments(map: &SegmentMap, root: VertexId) -> Self {
        Self::new(map.vertices().clone(), root, false, |u, x| {
            map.contains(root, x, u)
        })
    }

    /// `a ≺ b` iff `(r, a, b)` is in the relation.
    pub fn from_strict(relation: &TernaryRelation, root: VertexId) -> Self {
        Self::new(relation.vertices().clone(), root, true, |a, b| {
            relation.contains(root, a, b)
        })
    }

    /// `u ⪯ x` iff `u` lies on the path from the root to `x`.
    pub fn from_tree(tree: &Tree, root: VertexId) -> Self {
        let t = traverse(tree, root);
        let n = tree.len();
        let mut view = Self::new(tree.vertices().clone(), root, false, |_, _| false);
        for x in 0..n {
            let mut y = x;
            loop {
                view.above.set(y, x, true);
                if y == root {
                    break;
                }
                y = t.parent[y];
            }
        }
        view
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn is_below(&self, u: VertexId, x: VertexId) -> bool {
        self.above.get(u, x)
    }

    fn defect(&self, kind: OrderDefect, witness: Vec<VertexId>) -> OrderError {
        OrderError::new(&self.vertices, kind, witness)
    }

    /// Certifies reflexivity (or irreflexivity for strict views),
    /// antisymmetry and transitivity.
    pub fn check_order(&self) -> Result<(), OrderError> {
        let n = self.vertices.len();
        for u in 0..n {
            if self.above.get(u, u) != !self.strict {
                let kind = if self.strict {
                    OrderDefect::NotIrreflexive
                } else {
                    OrderDefect::NotReflexive
                };
                return Err(self.defect(kind, vec![u]));
            }
        }
        for u in 0..n {
            for x in self.above.ones_in_row(u) {
                if x != u && self.above.get(x, u) {
                    return Err(self.defect(OrderDefect::NotAntisymmetric, vec![u, x]));
                }
            }
        }
        for u in 0..n {
            for v in self.above.ones_in_row(u) {
                if let Some(w) = bits::first_difference(self.above.row(v), self.above.row(u)) {
                    return Err(self.defect(OrderDefect::NotTransitive, vec![u, v, w]));
                }
            }
        }
        Ok(())
    }

    /// Down-sets: row `x` holds every `u` below `x`.
    fn below_rows(&self) -> BitMatrix {
        let n = self.vertices.len();
        let mut below = BitMatrix::new(n, n);
        for u in 0..n {
            for x in self.above.ones_in_row(u) {
                below.set(x, u, true);
            }
        }
        below
    }
}

impl fmt::Debug for OrderView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (0..self.vertices.len())
            .flat_map(|u| {
                self.above
                    .ones_in_row(u)
                    .map(move |x| format!("{}<{}", self.vertices.label(u), self.vertices.label(x)))
                    .collect::<Vec<_>>()
            })
            .collect();
        f.debug_struct("OrderView")
            .field("root", &self.root)
            .field("strict", &self.strict)
            .field("pairs", &pairs)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderDefect {
    StrictView,
    NotReflexive,
    NotIrreflexive,
    NotAntisymmetric,
    NotTransitive,
    /// Some `w` is not above the root.
    RootNotLeast,
    /// `u, v` both below `w` but incomparable.
    DownSetNotChain,
}

impl fmt::Display for OrderDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderDefect::StrictView => "order view is strict",
            OrderDefect::NotReflexive => "not reflexive",
            OrderDefect::NotIrreflexive => "not irreflexive",
            OrderDefect::NotAntisymmetric => "not antisymmetric",
            OrderDefect::NotTransitive => "not transitive",
            OrderDefect::RootNotLeast => "root is not below every vertex",
            OrderDefect::DownSetNotChain => "incomparable elements below a common vertex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at ({rendered})")]
pub struct OrderError {
    pub kind: OrderDefect,
    pub witness: Vec<VertexId>,
    rendered: String,
}

impl OrderError {
    pub(crate) fn new(vertices: &VertexTable, kind: OrderDefect, witness: Vec<VertexId>) -> Self {
        OrderError {
            rendered: vertices.render(&witness),
            kind,
            witness,
        }
    }
}

/// Builds the tree whose root paths realize a non-strict order: the minimal
/// elements of `V - {r}` become children of `r` and each up-set is recursed.
pub fn tree_from_order(view: &OrderView) -> Result<Tree, OrderError> {
    let n = view.vertices.len();
    let r = view.root;
    if view.strict {
        return Err(view.defect(OrderDefect::StrictView, vec![r]));
    }
    view.check_order()?;
    if let Some(w) = (0..n).find(|&w| !view.above.get(r, w)) {
        return Err(view.defect(OrderDefect::RootNotLeast, vec![w]));
    }
    let below = view.below_rows();
    for u in 0..n {
        for w in view.above.ones_in_row(u) {
            for v in bits::Ones::new(below.row(w)) {
                if !view.above.get(u, v) && !view.above.get(v, u) {
                    return Err(view.defect(OrderDefect::DownSetNotChain, vec![u, v, w]));
                }
            }
        }
    }

    let words = bits::words_for(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut all = vec![0u64; words];
    (0..n).for_each(|x| bits::set_bit(&mut all, x));
    let mut stack = vec![(r, all)];
    while let Some((sub_root, members)) = stack.pop() {
        let mut rest = members.clone();
        bits::clear_bit(&mut rest, sub_root);
        let mut scratch = vec![0u64; words];
        let minimal: Vec<VertexId> = bits::Ones::new(&rest)
            .filter(|&x| {
                scratch
                    .iter_mut()
                    .zip(below.row(x).iter().zip(&rest))
                    .for_each(|(s, (b, m))| *s = b & m);
                bits::count_ones(&scratch) == 1
            })
            .collect();
        for &child in &minimal {
            edges.push((sub_root, child));
            let class: Vec<u64> = view
                .above
                .row(child)
                .iter()
                .zip(&members)
                .map(|(a, m)| a & m)
                .collect();
            stack.push((child, class));
        }
    }
    // Preconditions make the up-sets of the minimal elements a partition.
    Ok(Tree::from_ids(view.vertices.clone(), edges).expect("certified order yields a tree"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("tree size {n} outside 1..={bound}")]
    OutOfBounds { n: usize, bound: usize },
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into an edge list.
pub fn prufer_decode(sequence: &[VertexId], n: usize) -> Vec<(VertexId, VertexId)> {
    debug_assert_eq!(sequence.len() + 2, n.max(2));
    if n == 1 {
        return Vec::new();
    }
    let mut degree = vec![1usize; n];
    for &s in sequence {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Linear-time decoding: `leaf` is the smallest current leaf.
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &s in sequence {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Tree on labels `0..n` from a uniformly random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    let vertices = Arc::new(VertexTable::numbered(n).expect("n >= 1"));
    let sequence: Vec<VertexId> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    Tree::from_ids(vertices, prufer_decode(&sequence, n)).expect("Prüfer decoding yields a tree")
}

/// Every labeled tree on `0..n`, in lexicographic Prüfer order.
pub struct LabeledTrees {
    n: usize,
    vertices: Arc<VertexTable>,
    sequence: Vec<VertexId>,
    exhausted: bool,
}

impl LabeledTrees {
    pub fn new(n: usize) -> Result<Self, EnumerationError> {
        Self::with_bound(n, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(n: usize, bound: usize) -> Result<Self, EnumerationError> {
        if n == 0 || n > bound {
            return Err(EnumerationError::OutOfBounds { n, bound });
        }
        Ok(LabeledTrees {
            n,
            vertices: Arc::new(
                VertexTable::numbered(n)
                    .map_err(|_: ModelError| EnumerationError::OutOfBounds { n, bound })?,
            ),
            sequence: vec![0; n.saturating_sub(2)],
            exhausted: false,
        })
    }
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.exhausted {
            return None;
        }
        let tree = Tree::from_ids(self.vertices.clone(), prufer_decode(&self.sequence, self.n))
            .expect("Prüfer decoding yields a tree");
        // Advance like an odometer; the last position varies fastest.
        self.exhausted = true;
        for digit in self.sequence.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.exhausted = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees, EnumerationError> {
    LabeledTrees::new(n)
}
