//! Non-strict tree betweenness conditions (T1)-(T5).

use super::strict::{reversal, shift};
use super::{n_predicate, AxiomReport, CheckOptions, Semantics, Sink};
use crate::bits;
use crate::model::{Axiom, TernaryRelation};

/// Checks (T1)-(T5). Accepts any relation.
pub fn check_nonstrict_axioms(relation: &TernaryRelation, options: &CheckOptions) -> AxiomReport {
    let mut sink = Sink::new(options.mode);
    reversal(relation, Axiom::T1, &mut sink);
    t2(relation, &mut sink);
    shift(relation, Axiom::T3, &mut sink);
    t4(relation, options.semantics, &mut sink);
    t5(relation, &mut sink);
    sink.finish(Some(options.semantics))
}

/// `(u,v,w), (v,w,z), v≠w ⇒ (u,w,z)`.
fn t2(c: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::T2);
    let n = c.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if v == w || !c.contains(u, v, w) {
                    continue;
                }
                for z in 0..n {
                    if c.contains(v, w, z)
                        && !c.contains(u, w, z)
                        && !sink.push(Axiom::T2, &[u, v, w, z], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

/// `N(u,v,w) ⇒ ∃c≠u: (u,c,v), (u,c,w)`.
fn t4(c: &TernaryRelation, semantics: Semantics, sink: &mut Sink) {
    sink.begin(Axiom::T4);
    let n = c.len();
    let mut common = vec![0u64; bits::words_for(n)];
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if !n_predicate(c, u, v, w, semantics) {
                    continue;
                }
                for ((s, p), q) in common.iter_mut().zip(c.between(u, v)).zip(c.between(u, w)) {
                    *s = p & q;
                }
                bits::clear_bit(&mut common, u);
                if common.iter().all(|&x| x == 0) && !sink.push(Axiom::T4, &[u, v, w], Some("no c"))
                {
                    return;
                }
            }
        }
    }
}

/// `(u,v,w), (v,u,w) ∈ C ⇔ u=v`.
fn t5(c: &TernaryRelation, sink: &mut Sink) {
    sink.begin(Axiom::T5);
    let n = c.len();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let both = c.contains(u, v, w) && c.contains(v, u, w);
                let note = match (both, u == v) {
                    (true, false) => "=>",
                    (false, true) => "<=",
                    _ => continue,
                };
                if !sink.push(Axiom::T5, &[u, v, w], Some(note)) {
                    return;
                }
            }
        }
    }
}
