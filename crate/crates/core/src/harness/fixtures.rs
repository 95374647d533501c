//! The five relations on `{u, v, w, z}` used to show the strict axioms are
//! independent. Ids: `u=0, v=1, w=2, z=3`.

use std::sync::Arc;

use crate::model::{TernaryRelation, VertexId, VertexTable};

const U: VertexId = 0;
const V: VertexId = 1;
const W: VertexId = 2;
const Z: VertexId = 3;

pub const NAMES: [&str; 5] = ["B1", "B2", "B3", "B4", "B5"];

pub fn vertices() -> Arc<VertexTable> {
    Arc::new(VertexTable::new(["u", "v", "w", "z"]).expect("static labels"))
}

fn relation(triples: &[(VertexId, VertexId, VertexId)]) -> TernaryRelation {
    TernaryRelation::from_triples(vertices(), triples.iter().copied())
}

pub fn b1() -> TernaryRelation {
    relation(&[(U, V, W), (U, V, Z), (U, W, Z), (V, W, Z)])
}

pub fn b2() -> TernaryRelation {
    relation(&[
        (U, V, W),
        (V, W, Z),
        (W, Z, U),
        (Z, U, V),
        (W, V, U),
        (Z, W, V),
        (U, Z, W),
        (V, U, Z),
    ])
}

pub fn b3() -> TernaryRelation {
    relation(&[
        (U, V, W),
        (U, V, Z),
        (U, W, Z),
        (W, V, Z),
        (W, V, U),
        (Z, V, U),
        (Z, W, U),
        (Z, V, W),
    ])
}

pub fn b4() -> TernaryRelation {
    relation(&[
        (U, Z, V),
        (U, Z, W),
        (V, Z, W),
        (V, Z, U),
        (W, Z, U),
        (W, Z, V),
    ])
}

/// Every triple over the four vertices, including repeated components.
pub fn b5() -> TernaryRelation {
    let all = (0..4).flat_map(|a| (0..4).flat_map(move |b| (0..4).map(move |c| (a, b, c))));
    TernaryRelation::from_triples(vertices(), all)
}

pub fn all() -> [(&'static str, TernaryRelation); 5] {
    [
        ("B1", b1()),
        ("B2", b2()),
        ("B3", b3()),
        ("B4", b4()),
        ("B5", b5()),
    ]
}

pub fn by_name(name: &str) -> Option<TernaryRelation> {
    all()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, r)| r)
}
