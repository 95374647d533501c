//! Strict betweenness: (S1)-(S4), the derived properties (S5)-(S10) and the
//! five-bullet characterization.

use super::{n_predicate, require_strict, AxiomReport, CheckOptions, NotStrict, Semantics, Sink};
use crate::model::{Axiom, TernaryRelation};

/// Checks (S1)-(S4). Refuses non-strict input.
pub fn check_strict_axioms(
    relation: &TernaryRelation,
    options: &CheckOptions,
) -> Result<AxiomReport, NotStrict> {
    require_strict(relation)?;
    let mut sink = Sink::new(options.mode);
    reversal(relation, Axiom::S1, &mut sink);
    chain(relation, Axiom::S2, &mut sink);
    shift(relation, Axiom::S3, &mut sink);
    common_middle(relation, Axiom::S4, options.semantics, &mut sink);
    Ok(sink.finish(Some(options.semantics)))
}

/// Checks (S5)-(S10). (S10) is an O(n⁵) scan.
pub fn check_strict_derived(
    relation: &TernaryRelation,
    options: &CheckOptions,
) -> Result<AxiomReport, NotStrict> {
    require_strict(relation)?;
    let mut sink = Sink::new(options.mode);
    s5(relation, &mut sink);
    s6(relation, &mut sink);
    no_swap(relation, Axiom::S7, &mut sink);
    s8(relation, &mut sink);
    s9(relation, &mut sink);
    s10(relation, &mut sink);
    Ok(sink.finish(None))
}

/// Checks the five bullets: (S1), (S7), (S2), (S3) and the strengthened (S4).
pub fn check_burigana_axioms(
    relation: &TernaryRelation,
    options: &CheckOptions,
) -> Result<AxiomReport, NotStrict> {
    require_strict(relation)?;
    let mut sink = Sink::new(options.mode);
    reversal(relation, Axiom::Bur1, &mut sink);
    no_swap(relation, Axiom::Bur2, &mut sink);
    chain(relation, Axiom::Bur3, &mut sink);
    shift(relation, Axiom::Bur4, &mut sink);
    common_middle(relation, Axiom::Bur5, options.semantics, &mut sink);
    Ok(sink.finish(Some(options.semantics)))
}

/// `(u,v,w) ⇒ (w,v,u)`.
pub(super) fn reversal(b: &TernaryRelation, axiom: Axiom, sink: &mut Sink) {
    sink.begin(axiom);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if b.contains(u, v, w)
                    && !b.contains(w, v, u)
                    && !sink.push(axiom, &[u, v, w], None)
                {
                    return;
                }
            }
        }
    }
}

/// `(u,v,w), (v,w,z) ⇒ (u,w,z)`.
pub(super) fn chain(b: &TernaryRelation, axiom: Axiom, sink: &mut Sink) {
    sink.begin(axiom);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if !b.contains(u, v, w) {
                    continue;
                }
                for z in 0..n {
                    if b.contains(v, w, z)
                        && !b.contains(u, w, z)
                        && !sink.push(axiom, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `(u,v,w), (u,w,z) ⇒ (v,w,z)`.
pub(super) fn shift(b: &TernaryRelation, axiom: Axiom, sink: &mut Sink) {
    sink.begin(axiom);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if !b.contains(u, v, w) {
                    continue;
                }
                for z in 0..n {
                    if b.contains(u, w, z)
                        && !b.contains(v, w, z)
                        && !sink.push(axiom, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `N(u,v,w) ⇒ ∃c: (u,c,v), (u,c,w)`, with `(v,c,w)` also required for BUR5.
fn common_middle(b: &TernaryRelation, axiom: Axiom, semantics: Semantics, sink: &mut Sink) {
    sink.begin(axiom);
    let n = b.len();
    let strengthened = axiom == Axiom::Bur5;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if !n_predicate(b, u, v, w, semantics) {
                    continue;
                }
                let (uv, uw, vw) = (b.between(u, v), b.between(u, w), b.between(v, w));
                let found = uv
                    .iter()
                    .zip(uw)
                    .zip(vw)
                    .any(|((p, q), r)| p & q & if strengthened { *r } else { !0 } != 0);
                if !found && !sink.push(axiom, &[u, v, w], Some("no c")) {
                    return;
                }
            }
        }
    }
}

/// `(u,v,w) ⇒ (v,u,w) ∉ B`.
fn no_swap(b: &TernaryRelation, axiom: Axiom, sink: &mut Sink) {
    sink.begin(axiom);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if b.contains(u, v, w) && b.contains(v, u, w) && !sink.push(axiom, &[u, v, w], None)
                {
                    return;
                }
            }
        }
    }
}

/// `(u,v,w), (u,w,z) ⇒ (u,v,z)`.
fn s5(b: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::S5);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if !b.contains(u, v, w) {
                    continue;
                }
                for z in 0..n {
                    if b.contains(u, w, z)
                        && !b.contains(u, v, z)
                        && !sink.push(Axiom::S5, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `(u,v,z), (v,w,z) ⇒ (u,v,w), (u,w,z)`.
fn s6(b: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::S6);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                for z in 0..n {
                    if !(b.contains(u, v, z) && b.contains(v, w, z)) {
                        continue;
                    }
                    let note = match (b.contains(u, v, w), b.contains(u, w, z)) {
                        (true, true) => continue,
                        (false, true) => "(u,v,w) missing",
                        (true, false) => "(u,w,z) missing",
                        (false, false) => "both missing",
                    };
                    if !sink.push(Axiom::S6, &[u, v, w, z], Some(note)) {
                        return;
                    }
                }
            }
        }
    }
}

/// `(u,v,z), (u,w,z) ⇒ v=w ∨ (u,v,w) ∨ (u,w,v)`.
fn s8(b: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::S8);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                for z in 0..n {
                    if b.contains(u, v, z)
                        && b.contains(u, w, z)
                        && !b.contains(u, v, w)
                        && !b.contains(u, w, v)
                        && !sink.push(Axiom::S8, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `(u,v,z), (u,w,z) ⇒ v=w ∨ (w,v,u) ∨ (w,v,z)`.
fn s9(b: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::S9);
    let n = b.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                for z in 0..n {
                    if b.contains(u, v, z)
                        && b.contains(u, w, z)
                        && !b.contains(w, v, u)
                        && !b.contains(w, v, z)
                        && !sink.push(Axiom::S9, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `(r,u,x), (r,u,z), (x,y,z) ⇒ y=u ∨ (r,u,y)`.
fn s10(b: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::S10);
    let n = b.len();
    for r in 0..n {
        for u in 0..n {
            for x in 0..n {
                if !b.contains(r, u, x) {
                    continue;
                }
                for y in 0..n {
                    if y == u || b.contains(r, u, y) {
                        continue;
                    }
                    for z in 0..n {
                        if b.contains(r, u, z)
                            && b.contains(x, y, z)
                            && !sink.push(Axiom::S10, &[r, u, x, y, z], None)
                        {
                            return;
                        }
                    }
                }
            }
        }
    }
}
