//! Ground data model: vertex tables, trees, segment maps, ternary relations
//! and violation witnesses. Only structural validation happens here.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{self, BitMatrix};

/// Dense vertex id in `0..n`.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("vertex id {id} out of range for {len} vertices")]
    IdOutOfRange { id: VertexId, len: usize },
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?}-{1:?}")]
    DuplicateEdge(String, String),
    #[error("edge count {found} does not match {expected} (n - 1)")]
    EdgeCount { expected: usize, found: usize },
    #[error("disconnected: {0:?} is unreachable from {1:?}")]
    Disconnected(String, String),
    #[error("{axiom} takes {expected} witness ids, got {found}")]
    WitnessArity {
        axiom: Axiom,
        expected: usize,
        found: usize,
    },
    #[error("malformed violation: {0}")]
    MalformedViolation(String),
}

/// Label table: ordered distinct labels with a label-to-id index.
#[derive(Clone)]
pub struct VertexTable {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

fn label_is_valid(label: &str) -> bool {
    !label.is_empty()
        && label != ":"
        && !label.contains('#')
        && !label.chars().any(char::is_whitespace)
}

impl VertexTable {
    pub fn new<I, S>(labels: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(ModelError::EmptyVertexSet);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if !label_is_valid(label) {
                return Err(ModelError::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), id).is_some() {
                return Err(ModelError::DuplicateLabel(label.clone()));
            }
        }
        Ok(VertexTable { labels, index })
    }

    /// Labels `0`, `1`, ..., `n-1`.
    pub fn numbered(n: usize) -> Result<Self, ModelError> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<VertexId, ModelError> {
        self.id(label)
            .ok_or_else(|| ModelError::UnknownLabel(label.to_string()))
    }

    pub fn check_id(&self, id: VertexId) -> Result<(), ModelError> {
        if id < self.len() {
            Ok(())
        } else {
            Err(ModelError::IdOutOfRange {
                id,
                len: self.len(),
            })
        }
    }

    /// Joins the labels of `ids` with single spaces.
    pub fn render(&self, ids: &[VertexId]) -> String {
        ids.iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for VertexTable {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for VertexTable {}

impl fmt::Debug for VertexTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// A finite labeled tree.
#[derive(Clone)]
pub struct Tree {
    vertices: Arc<VertexTable>,
    /// Sorted, each pair `(a, b)` with `a < b`.
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
}

/// Builds a tree from label pairs, reporting the first structural defect.
pub fn build_tree<I, A, B>(
    vertices: impl Into<Arc<VertexTable>>,
    edges: I,
) -> Result<Tree, ModelError>
where
    I: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let vertices = vertices.into();
    let ids = edges
        .into_iter()
        .map(|(a, b)| Ok((vertices.require(a.as_ref())?, vertices.require(b.as_ref())?)))
        .collect::<Result<Vec<_>, ModelError>>()?;
    Tree::from_ids(vertices, ids)
}

impl Tree {
    pub fn from_ids<I>(vertices: impl Into<Arc<VertexTable>>, edges: I) -> Result<Tree, ModelError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let vertices = vertices.into();
        let n = vertices.len();
        let mut normalized = Vec::with_capacity(n.saturating_sub(1));
        let mut seen = std::collections::HashSet::new();
        for (a, b) in edges {
            vertices.check_id(a)?;
            vertices.check_id(b)?;
            if a == b {
                return Err(ModelError::SelfLoop(vertices.label(a).to_string()));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(ModelError::DuplicateEdge(
                    vertices.label(e.0).to_string(),
                    vertices.label(e.1).to_string(),
                ));
            }
            normalized.push(e);
        }
        if normalized.len() != n - 1 {
            return Err(ModelError::EdgeCount {
                expected: n - 1,
                found: normalized.len(),
            });
        }
        normalized.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        if let Some(lost) = reached.iter().position(|r| !r) {
            return Err(ModelError::Disconnected(
                vertices.label(lost).to_string(),
                vertices.label(0).to_string(),
            ));
        }
        Ok(Tree {
            vertices,
            edges: normalized,
            adjacency,
        })
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Edges as `(min id, max id)`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Tree {}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.vertices.label(a), self.vertices.label(b)))
            .collect();
        f.debug_struct("Tree")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

/// Total map `(u, v) -> [uv] ⊆ V`, one dense membership row per ordered pair.
#[derive(Clone, PartialEq, Eq)]
pub struct SegmentMap {
    vertices: Arc<VertexTable>,
    table: BitMatrix,
}

impl SegmentMap {
    pub fn builder(vertices: impl Into<Arc<VertexTable>>) -> SegmentMapBuilder {
        let vertices = vertices.into();
        let n = vertices.len();
        SegmentMapBuilder {
            table: BitMatrix::new(n * n, n),
            vertices,
        }
    }

    pub(crate) fn from_table(vertices: Arc<VertexTable>, table: BitMatrix) -> Self {
        debug_assert_eq!(table.rows(), vertices.len() * vertices.len());
        SegmentMap { vertices, table }
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `x ∈ [uv]`.
    #[inline]
    pub fn contains(&self, u: VertexId, v: VertexId, x: VertexId) -> bool {
        self.table.get(u * self.len() + v, x)
    }

    /// Members of `[uv]` in ascending id order.
    pub fn segment(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        self.table.ones_in_row(u * self.len() + v).collect()
    }

    #[inline]
    pub(crate) fn row(&self, u: VertexId, v: VertexId) -> &[u64] {
        self.table.row(u * self.len() + v)
    }

    pub fn to_builder(&self) -> SegmentMapBuilder {
        SegmentMapBuilder {
            vertices: self.vertices.clone(),
            table: self.table.clone(),
        }
    }
}

impl fmt::Debug for SegmentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for u in 0..self.len() {
            for v in 0..self.len() {
                m.entry(
                    &format!("{}{}", self.vertices.label(u), self.vertices.label(v)),
                    &self.vertices.render(&self.segment(u, v)),
                );
            }
        }
        m.finish()
    }
}

pub struct SegmentMapBuilder {
    vertices: Arc<VertexTable>,
    table: BitMatrix,
}

impl SegmentMapBuilder {
    pub fn insert(&mut self, u: VertexId, v: VertexId, x: VertexId) -> &mut Self {
        let n = self.vertices.len();
        self.table.set(u * n + v, x, true);
        self
    }

    pub fn remove(&mut self, u: VertexId, v: VertexId, x: VertexId) -> &mut Self {
        let n = self.vertices.len();
        self.table.set(u * n + v, x, false);
        self
    }

    pub fn contains(&self, u: VertexId, v: VertexId, x: VertexId) -> bool {
        self.table.get(u * self.vertices.len() + v, x)
    }

    /// Replaces `[uv]` by `members`.
    pub fn set_segment(&mut self, u: VertexId, v: VertexId, members: &[VertexId]) -> &mut Self {
        let n = self.vertices.len();
        self.table.row_mut(u * n + v).fill(0);
        for &x in members {
            self.table.set(u * n + v, x, true);
        }
        self
    }

    pub fn build(self) -> SegmentMap {
        SegmentMap {
            vertices: self.vertices,
            table: self.table,
        }
    }
}

/// A subset of V³. Storage row `x * n + z` holds the middles `y` with
/// `(x, y, z)` in the relation.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryRelation {
    vertices: Arc<VertexTable>,
    cube: BitMatrix,
    strict: bool,
}

impl TernaryRelation {
    pub fn builder(vertices: impl Into<Arc<VertexTable>>) -> RelationBuilder {
        let vertices = vertices.into();
        let n = vertices.len();
        RelationBuilder {
            cube: BitMatrix::new(n * n, n),
            vertices,
        }
    }

    pub fn empty(vertices: impl Into<Arc<VertexTable>>) -> Self {
        Self::builder(vertices).build()
    }

    /// Relation from id triples; panics on out-of-range ids.
    pub fn from_triples<I>(vertices: impl Into<Arc<VertexTable>>, triples: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId, VertexId)>,
    {
        let mut b = Self::builder(vertices);
        for (u, v, w) in triples {
            b.insert(u, v, w);
        }
        b.build()
    }

    pub(crate) fn from_cube(vertices: Arc<VertexTable>, cube: BitMatrix) -> Self {
        let strict = first_repeated(&cube, vertices.len()).is_none();
        TernaryRelation {
            vertices,
            cube,
            strict,
        }
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of member triples.
    pub fn triple_count(&self) -> usize {
        (0..self.cube.rows())
            .map(|r| bits::count_ones(self.cube.row(r)))
            .sum()
    }

    #[inline]
    pub fn contains(&self, u: VertexId, v: VertexId, w: VertexId) -> bool {
        self.cube.get(u * self.len() + w, v)
    }

    /// True iff every member triple has pairwise distinct components.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// First member triple (lexicographic by `(u, v, w)`) with a repeated component.
    pub fn first_repeated_triple(&self) -> Option<(VertexId, VertexId, VertexId)> {
        first_repeated(&self.cube, self.len())
    }

    /// Member triples in lexicographic id order.
    pub fn triples(&self) -> impl Iterator<Item = (VertexId, VertexId, VertexId)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| {
            (0..n).flat_map(move |v| {
                (0..n)
                    .filter(move |&w| self.contains(u, v, w))
                    .map(move |w| (u, v, w))
            })
        })
    }

    /// Middles `y` with `(x, y, z)` in the relation, as a bit row.
    #[inline]
    pub(crate) fn between(&self, x: VertexId, z: VertexId) -> &[u64] {
        self.cube.row(x * self.len() + z)
    }

    pub fn to_builder(&self) -> RelationBuilder {
        RelationBuilder {
            vertices: self.vertices.clone(),
            cube: self.cube.clone(),
        }
    }
}

fn first_repeated(cube: &BitMatrix, n: usize) -> Option<(VertexId, VertexId, VertexId)> {
    let mut best: Option<(VertexId, VertexId, VertexId)> = None;
    let mut consider = |t: (VertexId, VertexId, VertexId)| {
        if best.is_none_or(|b| t < b) {
            best = Some(t);
        }
    };
    for x in 0..n {
        for z in 0..n {
            let row = x * n + z;
            if x == z {
                if let Some(y) = cube.ones_in_row(row).next() {
                    consider((x, y, z));
                }
            } else {
                if cube.get(row, x) {
                    consider((x, x, z));
                }
                if cube.get(row, z) {
                    consider((x, z, z));
                }
            }
        }
    }
    best
}

impl fmt::Debug for TernaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let triples: Vec<String> = self
            .triples()
            .map(|(u, v, w)| self.vertices.render(&[u, v, w]))
            .collect();
        f.debug_struct("TernaryRelation")
            .field("strict", &self.strict)
            .field("triples", &triples)
            .finish()
    }
}

pub struct RelationBuilder {
    vertices: Arc<VertexTable>,
    cube: BitMatrix,
}

impl RelationBuilder {
    pub fn insert(&mut self, u: VertexId, v: VertexId, w: VertexId) -> &mut Self {
        let n = self.vertices.len();
        self.cube.set(u * n + w, v, true);
        self
    }

    pub fn remove(&mut self, u: VertexId, v: VertexId, w: VertexId) -> &mut Self {
        let n = self.vertices.len();
        self.cube.set(u * n + w, v, false);
        self
    }

    pub fn contains(&self, u: VertexId, v: VertexId, w: VertexId) -> bool {
        self.cube.get(u * self.vertices.len() + w, v)
    }

    pub fn build(self) -> TernaryRelation {
        TernaryRelation::from_cube(self.vertices, self.cube)
    }
}

/// `relation_contains`: membership of `(u, v, w)`.
pub fn relation_contains(r: &TernaryRelation, u: VertexId, v: VertexId, w: VertexId) -> bool {
    r.contains(u, v, w)
}

macro_rules! axioms {
    ($($variant:ident => $name:literal, $arity:literal;)*) => {
        /// Closed catalog of checkable conditions, in report order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Axiom {
            $($variant,)*
        }

        impl Axiom {
            pub const ALL: &'static [Axiom] = &[$(Axiom::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Axiom::$variant => $name,)*
                }
            }

            /// Length of the universally quantified prefix.
            pub fn arity(self) -> usize {
                match self {
                    $(Axiom::$variant => $arity,)*
                }
            }
        }
    };
}

axioms! {
    S => "S", 3;
    T => "T", 3;
    U1 => "U1", 3;
    C1_2 => "C1.2", 2;
    C1_4 => "C1.4", 2;
    C1_5 => "C1.5", 3;
    C1_7 => "C1.7", 3;
    C1_10 => "C1.10", 4;
    C2_1 => "C2.1", 3;
    C5_2 => "C5.2", 4;
    S1 => "S1", 3;
    S2 => "S2", 4;
    S3 => "S3", 4;
    S4 => "S4", 3;
    S5 => "S5", 4;
    S6 => "S6", 4;
    S7 => "S7", 3;
    S8 => "S8", 4;
    S9 => "S9", 4;
    S10 => "S10", 5;
    Bur1 => "BUR1", 3;
    Bur2 => "BUR2", 3;
    Bur3 => "BUR3", 4;
    Bur4 => "BUR4", 4;
    Bur5 => "BUR5", 3;
    T1 => "T1", 3;
    T2 => "T2", 4;
    T3 => "T3", 4;
    T4 => "T4", 3;
    T5 => "T5", 3;
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| ModelError::MalformedViolation(format!("unknown axiom {s:?}")))
    }
}

/// A failed axiom instance: the bound variables in quantifier order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    axiom: Axiom,
    witness: Vec<VertexId>,
    note: Option<String>,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: &[VertexId], note: Option<&str>) -> Result<Self, ModelError> {
        if witness.len() != axiom.arity() {
            return Err(ModelError::WitnessArity {
                axiom,
                expected: axiom.arity(),
                found: witness.len(),
            });
        }
        if note.is_some_and(|n| n.contains(['\n', '|']) || n.trim() != n || n.is_empty()) {
            return Err(ModelError::MalformedViolation(format!("bad note {note:?}")));
        }
        Ok(Violation {
            axiom,
            witness: witness.to_vec(),
            note: note.map(str::to_string),
        })
    }

    /// Crate-internal constructor for checkers, whose arities are fixed.
    pub(crate) fn at(axiom: Axiom, witness: &[VertexId], note: Option<&'static str>) -> Self {
        debug_assert_eq!(witness.len(), axiom.arity());
        Violation {
            axiom,
            witness: witness.to_vec(),
            note: note.map(str::to_string),
        }
    }

    pub fn axiom(&self) -> Axiom {
        self.axiom
    }

    pub fn witness(&self) -> &[VertexId] {
        &self.witness
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// `AXIOM label... [(note)]`.
    pub fn render(&self, vertices: &VertexTable) -> String {
        let mut s = format!("{} {}", self.axiom, vertices.render(&self.witness));
        if let Some(note) = &self.note {
            s.push_str(&format!(" ({note})"));
        }
        s
    }
}

/// Id form: `AXIOM id... [| note]`.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        for id in &self.witness {
            write!(f, " {id}")?;
        }
        if let Some(note) = &self.note {
            write!(f, " | {note}")?;
        }
        Ok(())
    }
}

impl FromStr for Violation {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, note) = match s.split_once(" | ") {
            Some((h, n)) => (h, Some(n)),
            None => (s, None),
        };
        let mut tokens = head.split(' ');
        let axiom: Axiom = tokens.next().unwrap_or_default().parse()?;
        let witness = tokens
            .map(|t| {
                t.parse::<VertexId>()
                    .map_err(|_| ModelError::MalformedViolation(format!("bad id {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Violation::new(axiom, &witness, note)
    }
}
