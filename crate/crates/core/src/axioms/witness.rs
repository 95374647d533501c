//! Point evaluation of each axiom body at a witness tuple.
//!
//! Written directly from the set-theoretic statements with ordinary sets,
//! sharing nothing with the bit-row scans, so that a scan's output can be
//! re-checked independently.

use std::collections::BTreeSet;

use super::Semantics;
use crate::model::{Axiom, SegmentMap, TernaryRelation, VertexId, Violation};

#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Segments(&'a SegmentMap),
    Relation(&'a TernaryRelation),
}

type Set = BTreeSet<VertexId>;

fn seg(m: &SegmentMap, a: VertexId, b: VertexId) -> Set {
    (0..m.len()).filter(|&x| m.contains(a, b, x)).collect()
}

fn meet(x: &Set, y: &Set) -> Set {
    x.intersection(y).copied().collect()
}

fn join(x: &Set, y: &Set) -> Set {
    x.union(y).copied().collect()
}

fn single(x: VertexId) -> Set {
    Set::from([x])
}

fn n_holds(
    b: &TernaryRelation,
    u: VertexId,
    v: VertexId,
    w: VertexId,
    semantics: Semantics,
) -> bool {
    let distinct = u != v && v != w && u != w;
    let mut absent = vec![(u, v, w), (v, w, u), (w, u, v)];
    if semantics == Semantics::Unordered {
        absent.extend([(w, v, u), (u, w, v), (v, u, w)]);
    }
    distinct && absent.iter().all(|&(x, y, z)| !b.contains(x, y, z))
}

/// True iff the violation's axiom really fails at its witness in `subject`.
pub fn revalidate(violation: &Violation, subject: Subject<'_>, semantics: Semantics) -> bool {
    let w = violation.witness();
    if w.len() != violation.axiom().arity() {
        return false;
    }
    let note = violation.note();
    match subject {
        Subject::Segments(m) => {
            if w.iter().any(|&x| x >= m.len()) {
                return false;
            }
            segment_fails(m, violation.axiom(), w, note)
        }
        Subject::Relation(b) => {
            if w.iter().any(|&x| x >= b.len()) {
                return false;
            }
            relation_fails(b, violation.axiom(), w, note, semantics)
        }
    }
}

fn segment_fails(m: &SegmentMap, axiom: Axiom, w: &[VertexId], note: Option<&str>) -> bool {
    let s = |a, b| seg(m, a, b);
    match axiom {
        Axiom::S => {
            let (a, b, c) = (w[0], w[1], w[2]);
            let target = meet(&s(a, b), &s(b, c));
            !(0..m.len()).any(|d| s(b, d) == target)
        }
        Axiom::T => {
            let (a, b, c) = (w[0], w[1], w[2]);
            s(a, b).is_subset(&s(a, c)) && meet(&s(a, b), &s(b, c)) != single(b)
        }
        Axiom::U1 => {
            let (a, b, c) = (w[0], w[1], w[2]);
            meet(&s(a, b), &s(b, c)) == single(b) && join(&s(a, b), &s(b, c)) != s(a, c)
        }
        Axiom::C1_2 => !s(w[0], w[1]).contains(&w[1]),
        Axiom::C1_4 => s(w[0], w[1]) != s(w[1], w[0]),
        Axiom::C1_5 => {
            let (a, b, c) = (w[0], w[1], w[2]);
            let lhs = s(a, c).contains(&b);
            let rhs = s(a, b).is_subset(&s(a, c));
            match note {
                Some("=>") => lhs && !rhs,
                Some("<=") => !lhs && rhs,
                _ => lhs != rhs,
            }
        }
        Axiom::C1_7 => {
            let (a, b, c) = (w[0], w[1], w[2]);
            s(a, c).contains(&b) && s(a, b).contains(&c) && b != c
        }
        Axiom::C1_10 => {
            let (a, b, c, d) = (w[0], w[1], w[2], w[3]);
            meet(&s(a, b), &s(b, c)) == s(b, d) && meet(&s(a, d), &s(d, c)) != single(d)
        }
        Axiom::C2_1 => {
            let (a, b, c) = (w[0], w[1], w[2]);
            let inside = s(a, c).contains(&b);
            let is_meet = meet(&s(a, b), &s(b, c)) == single(b);
            let is_join = join(&s(a, b), &s(b, c)) == s(a, c);
            match note {
                Some("in=>meet") => inside && !is_meet,
                Some("meet=>join") => is_meet && !is_join,
                Some("join=>in") => is_join && !inside,
                _ => !(inside == is_meet && is_meet == is_join),
            }
        }
        Axiom::C5_2 => {
            let (a, b, x, y) = (w[0], w[1], w[2], w[3]);
            let ab = s(a, b);
            ab.contains(&x)
                && ab.contains(&y)
                && !((s(a, y).contains(&x) && s(x, b).contains(&y))
                    || (s(a, x).contains(&y) && s(y, b).contains(&x)))
        }
        _ => false,
    }
}

fn relation_fails(
    b: &TernaryRelation,
    axiom: Axiom,
    w: &[VertexId],
    note: Option<&str>,
    semantics: Semantics,
) -> bool {
    let has = |x, y, z| b.contains(x, y, z);
    let n = b.len();
    match axiom {
        Axiom::S1 | Axiom::Bur1 | Axiom::T1 => has(w[0], w[1], w[2]) && !has(w[2], w[1], w[0]),
        Axiom::S2 | Axiom::Bur3 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, x) && has(v, x, z) && !has(u, x, z)
        }
        Axiom::T2 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            v != x && has(u, v, x) && has(v, x, z) && !has(u, x, z)
        }
        Axiom::S3 | Axiom::Bur4 | Axiom::T3 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, x) && has(u, x, z) && !has(v, x, z)
        }
        Axiom::S4 => {
            let (u, v, x) = (w[0], w[1], w[2]);
            n_holds(b, u, v, x, semantics) && !(0..n).any(|c| has(u, c, v) && has(u, c, x))
        }
        Axiom::Bur5 => {
            let (u, v, x) = (w[0], w[1], w[2]);
            n_holds(b, u, v, x, semantics)
                && !(0..n).any(|c| has(u, c, v) && has(u, c, x) && has(v, c, x))
        }
        Axiom::T4 => {
            let (u, v, x) = (w[0], w[1], w[2]);
            n_holds(b, u, v, x, semantics)
                && !(0..n).any(|c| c != u && has(u, c, v) && has(u, c, x))
        }
        Axiom::S5 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, x) && has(u, x, z) && !has(u, v, z)
        }
        Axiom::S6 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, z) && has(v, x, z) && !(has(u, v, x) && has(u, x, z))
        }
        Axiom::S7 | Axiom::Bur2 => has(w[0], w[1], w[2]) && has(w[1], w[0], w[2]),
        Axiom::S8 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, z) && has(u, x, z) && !(v == x || has(u, v, x) || has(u, x, v))
        }
        Axiom::S9 => {
            let (u, v, x, z) = (w[0], w[1], w[2], w[3]);
            has(u, v, z) && has(u, x, z) && !(v == x || has(x, v, u) || has(x, v, z))
        }
        Axiom::S10 => {
            let (r, u, x, y, z) = (w[0], w[1], w[2], w[3], w[4]);
            has(r, u, x) && has(r, u, z) && has(x, y, z) && !(y == u || has(r, u, y))
        }
        Axiom::T5 => {
            let (u, v, x) = (w[0], w[1], w[2]);
            let lhs = has(u, v, x) && has(v, u, x);
            match note {
                Some("=>") => lhs && u != v,
                Some("<=") => !lhs && u == v,
                _ => lhs != (u == v),
            }
        }
        _ => false,
    }
}
