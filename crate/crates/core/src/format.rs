//! Line-oriented text documents for trees, relations and segment maps.
//!
//! ```text
//! tree | relation [strict|nonstrict] | segments [symmetric]
//! vertices <label>...
//! edge <a> <b>  |  triple <u> <v> <w>  |  seg <u> <v> : <w>...
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Emission is canonical:
//! vertices in id order, edges by `(min id, max id)`, triples and segment
//! pairs lexicographically by ids, segment members in id order.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::model::{ModelError, SegmentMap, TernaryRelation, Tree, VertexId, VertexTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tree(Tree),
    Relation(TernaryRelation),
    Segments(SegmentMap),
}

impl Document {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Document::Tree(_) => DocumentKind::Tree,
            Document::Relation(_) => DocumentKind::Relation,
            Document::Segments(_) => DocumentKind::Segments,
        }
    }

    pub fn vertices(&self) -> &Arc<VertexTable> {
        match self {
            Document::Tree(t) => t.vertices(),
            Document::Relation(r) => r.vertices(),
            Document::Segments(m) => m.vertices(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Tree,
    Relation,
    Segments,
}

impl DocumentKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DocumentKind::Tree => "tree",
            DocumentKind::Relation => "relation",
            DocumentKind::Segments => "segments",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modifier {
    Strict,
    Nonstrict,
    Symmetric,
}

/// First line of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DocumentHeader {
    pub kind: DocumentKind,
    pub modifier: Option<Modifier>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("empty document")]
    Empty,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate triple {0}")]
    DuplicateTriple(String),
    #[error("duplicate segment pair {0}")]
    DuplicateSegment(String),
    #[error("missing segment pair {0}")]
    MissingSegment(String),
    #[error("strict relation has repeated-component triple {0}")]
    NotStrict(String),
    #[error("{0}")]
    Structure(ModelError),
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    err(line, FormatErrorKind::Malformed(msg.into()))
}

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_header(line: usize, tokens: &[&str]) -> Result<DocumentHeader, FormatError> {
    let kind = match tokens[0] {
        "tree" => DocumentKind::Tree,
        "relation" => DocumentKind::Relation,
        "segments" => DocumentKind::Segments,
        other => return Err(malformed(line, format!("unknown document kind {other:?}"))),
    };
    let modifier = match (kind, &tokens[1..]) {
        (_, []) => None,
        (DocumentKind::Relation, ["strict"]) => Some(Modifier::Strict),
        (DocumentKind::Relation, ["nonstrict"]) => Some(Modifier::Nonstrict),
        (DocumentKind::Segments, ["symmetric"]) => Some(Modifier::Symmetric),
        _ => {
            return Err(malformed(
                line,
                format!("invalid header {:?}", tokens.join(" ")),
            ))
        }
    };
    Ok(DocumentHeader { kind, modifier })
}

struct Labels<'a> {
    table: &'a VertexTable,
}

impl Labels<'_> {
    fn id(&self, line: usize, label: &str) -> Result<VertexId, FormatError> {
        self.table
            .id(label)
            .ok_or_else(|| err(line, FormatErrorKind::UnknownLabel(label.to_string())))
    }
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header_tokens) =
        lines.next().ok_or_else(|| err(0, FormatErrorKind::Empty))?;
    let header = parse_header(header_line, &header_tokens)?;
    let (vertices_line, vertex_tokens) = lines
        .next()
        .ok_or_else(|| malformed(header_line, "missing vertices line"))?;
    if vertex_tokens[0] != "vertices" {
        return Err(malformed(vertices_line, "expected `vertices`"));
    }
    let vertices = VertexTable::new(vertex_tokens[1..].iter().copied()).map_err(|e| {
        let kind = match e {
            ModelError::DuplicateLabel(l) => FormatErrorKind::DuplicateVertex(l),
            ModelError::EmptyVertexSet => FormatErrorKind::Malformed("no vertices".into()),
            ModelError::InvalidLabel(l) => {
                FormatErrorKind::Malformed(format!("invalid label {l:?}"))
            }
            other => FormatErrorKind::Structure(other),
        };
        err(vertices_line, kind)
    })?;
    let vertices = Arc::new(vertices);
    let body: Vec<(usize, Vec<&str>)> = lines.collect();
    let last_line = body.last().map_or(vertices_line, |(l, _)| *l);
    match header.kind {
        DocumentKind::Tree => parse_tree(vertices, &body, last_line).map(Document::Tree),
        DocumentKind::Relation => {
            parse_relation(vertices, &body, header.modifier == Some(Modifier::Strict))
                .map(Document::Relation)
        }
        DocumentKind::Segments => parse_segments(
            vertices,
            &body,
            header.modifier == Some(Modifier::Symmetric),
            last_line,
        )
        .map(Document::Segments),
    }
}

fn parse_tree(
    vertices: Arc<VertexTable>,
    body: &[(usize, Vec<&str>)],
    last_line: usize,
) -> Result<Tree, FormatError> {
    let labels = Labels { table: &vertices };
    let mut edges = Vec::with_capacity(body.len());
    let mut seen = HashSet::new();
    for (line, tokens) in body {
        let line = *line;
        let [kw, a, b] = tokens.as_slice() else {
            return Err(malformed(line, "expected `edge <a> <b>`"));
        };
        if *kw != "edge" {
            return Err(malformed(line, "expected `edge <a> <b>`"));
        }
        let (a, b) = (labels.id(line, a)?, labels.id(line, b)?);
        if a == b {
            return Err(err(
                line,
                FormatErrorKind::Structure(ModelError::SelfLoop(vertices.label(a).into())),
            ));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            let dup = ModelError::DuplicateEdge(vertices.label(a).into(), vertices.label(b).into());
            return Err(err(line, FormatErrorKind::Structure(dup)));
        }
        edges.push((a, b));
    }
    Tree::from_ids(vertices, edges).map_err(|e| err(last_line, FormatErrorKind::Structure(e)))
}

fn parse_relation(
    vertices: Arc<VertexTable>,
    body: &[(usize, Vec<&str>)],
    strict: bool,
) -> Result<TernaryRelation, FormatError> {
    let labels = Labels { table: &vertices };
    let mut builder = TernaryRelation::builder(vertices.clone());
    for (line, tokens) in body {
        let line = *line;
        let [kw, u, v, w] = tokens.as_slice() else {
            return Err(malformed(line, "expected `triple <u> <v> <w>`"));
        };
        if *kw != "triple" {
            return Err(malformed(line, "expected `triple <u> <v> <w>`"));
        }
        let (u, v, w) = (
            labels.id(line, u)?,
            labels.id(line, v)?,
            labels.id(line, w)?,
        );
        let rendered = vertices.render(&[u, v, w]);
        if builder.contains(u, v, w) {
            return Err(err(line, FormatErrorKind::DuplicateTriple(rendered)));
        }
        if strict && (u == v || v == w || u == w) {
            return Err(err(line, FormatErrorKind::NotStrict(rendered)));
        }
        builder.insert(u, v, w);
    }
    Ok(builder.build())
}

fn parse_segments(
    vertices: Arc<VertexTable>,
    body: &[(usize, Vec<&str>)],
    symmetric: bool,
    last_line: usize,
) -> Result<SegmentMap, FormatError> {
    let n = vertices.len();
    let labels = Labels { table: &vertices };
    let mut builder = SegmentMap::builder(vertices.clone());
    let mut seen = vec![false; n * n];
    for (line, tokens) in body {
        let line = *line;
        if tokens.len() < 4 || tokens[0] != "seg" || tokens[3] != ":" {
            return Err(malformed(line, "expected `seg <u> <v> : <w>...`"));
        }
        let (u, v) = (labels.id(line, tokens[1])?, labels.id(line, tokens[2])?);
        let mut members = Vec::with_capacity(tokens.len() - 4);
        for t in &tokens[4..] {
            let x = labels.id(line, t)?;
            if members.contains(&x) {
                return Err(malformed(line, format!("repeated member {t:?}")));
            }
            members.push(x);
        }
        let duplicate = seen[u * n + v] || (symmetric && seen[v * n + u]);
        if duplicate {
            return Err(err(
                line,
                FormatErrorKind::DuplicateSegment(vertices.render(&[u, v])),
            ));
        }
        seen[u * n + v] = true;
        builder.set_segment(u, v, &members);
        if symmetric && u != v {
            seen[v * n + u] = true;
            builder.set_segment(v, u, &members);
        }
    }
    for u in 0..n {
        if symmetric && !seen[u * n + u] {
            seen[u * n + u] = true;
            builder.set_segment(u, u, &[u]);
        }
        for v in 0..n {
            if !seen[u * n + v] {
                return Err(err(
                    last_line,
                    FormatErrorKind::MissingSegment(vertices.render(&[u, v])),
                ));
            }
        }
    }
    Ok(builder.build())
}

fn vertices_line(out: &mut String, vertices: &VertexTable) {
    out.push_str("vertices");
    for label in vertices.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
}

pub fn emit_tree(tree: &Tree) -> String {
    let v = tree.vertices();
    let mut out = String::from("tree\n");
    vertices_line(&mut out, v);
    for &(a, b) in tree.edges() {
        let _ = writeln!(out, "edge {} {}", v.label(a), v.label(b));
    }
    out
}

pub fn emit_relation(relation: &TernaryRelation) -> String {
    let v = relation.vertices();
    let mut out = String::from(if relation.is_strict() {
        "relation strict\n"
    } else {
        "relation nonstrict\n"
    });
    vertices_line(&mut out, v);
    for (a, b, c) in relation.triples() {
        let _ = writeln!(out, "triple {} {} {}", v.label(a), v.label(b), v.label(c));
    }
    out
}

pub fn emit_segments(map: &SegmentMap) -> String {
    let v = map.vertices();
    let mut out = String::from("segments\n");
    vertices_line(&mut out, v);
    for a in 0..map.len() {
        for b in 0..map.len() {
            let _ = write!(out, "seg {} {} :", v.label(a), v.label(b));
            for x in map.segment(a, b) {
                out.push(' ');
                out.push_str(v.label(x));
            }
            out.push('\n');
        }
    }
    out
}

pub fn emit_document(document: &Document) -> String {
    match document {
        Document::Tree(t) => emit_tree(t),
        Document::Relation(r) => emit_relation(r),
        Document::Segments(m) => emit_segments(m),
    }
}
