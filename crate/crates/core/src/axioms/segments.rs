//! Segment-map postulates (S), (T), (U1) and their corollaries.

use super::{AxiomReport, CheckOptions, Sink};
use crate::bits;
use crate::model::{Axiom, SegmentMap};

struct Rows<'a> {
    map: &'a SegmentMap,
    scratch: Vec<u64>,
}

impl<'a> Rows<'a> {
    fn new(map: &'a SegmentMap) -> Self {
        Rows {
            map,
            scratch: vec![0; bits::words_for(map.len())],
        }
    }

    /// `[ab] ∩ [cd]` into the scratch row.
    fn meet(&mut self, a: usize, b: usize, c: usize, d: usize) -> &[u64] {
        let (x, y) = (self.map.row(a, b), self.map.row(c, d));
        for ((s, p), q) in self.scratch.iter_mut().zip(x).zip(y) {
            *s = p & q;
        }
        &self.scratch
    }

    /// `[ab] ∩ [cd] = {e}`.
    fn meet_is(&mut self, a: usize, b: usize, c: usize, d: usize, e: usize) -> bool {
        let m = self.meet(a, b, c, d);
        bits::count_ones(m) == 1 && bits::test_bit(m, e)
    }

    /// `[ab] ∪ [cd] = [ef]`.
    fn join_is(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> bool {
        let (x, y, z) = (self.map.row(a, b), self.map.row(c, d), self.map.row(e, f));
        x.iter().zip(y).zip(z).all(|((p, q), r)| p | q == *r)
    }

    fn subset(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        bits::is_subset(self.map.row(a, b), self.map.row(c, d))
    }
}

/// Checks (S), (T) and (U1) over all of V³.
pub fn check_segment_axioms(map: &SegmentMap, options: &CheckOptions) -> AxiomReport {
    let mut sink = Sink::new(options.mode);
    let mut rows = Rows::new(map);
    postulate_s(&mut rows, &mut sink);
    postulate_t(&mut rows, &mut sink);
    postulate_u1(&mut rows, &mut sink);
    sink.finish(None)
}

/// Checks corollaries (1.2), (1.4), (1.5), (1.7), (1.10), (2.1) and (5.2).
pub fn check_segment_corollaries(map: &SegmentMap, options: &CheckOptions) -> AxiomReport {
    let mut sink = Sink::new(options.mode);
    let mut rows = Rows::new(map);
    c1_2(map, &mut sink);
    c1_4(map, &mut sink);
    c1_5(&rows, &mut sink);
    c1_7(map, &mut sink);
    c1_10(&mut rows, &mut sink);
    c2_1(&mut rows, &mut sink);
    c5_2(map, &mut sink);
    sink.finish(None)
}

fn postulate_s(rows: &mut Rows, sink: &mut Sink) {
    sink.begin(Axiom::S);
    let map = rows.map;
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let meet = rows.meet(a, b, b, c);
                if !(0..n).any(|d| map.row(b, d) == meet)
                    && !sink.push(Axiom::S, &[a, b, c], Some("no d"))
                {
                    return;
                }
            }
        }
    }
}

fn postulate_t(rows: &mut Rows, sink: &mut Sink) {
    sink.begin(Axiom::T);
    let n = rows.map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rows.subset(a, b, a, c)
                    && !rows.meet_is(a, b, b, c, b)
                    && !sink.push(Axiom::T, &[a, b, c], None)
                {
                    return;
                }
            }
        }
    }
}

fn postulate_u1(rows: &mut Rows, sink: &mut Sink) {
    sink.begin(Axiom::U1);
    let n = rows.map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rows.meet_is(a, b, b, c, b)
                    && !rows.join_is(a, b, b, c, a, c)
                    && !sink.push(Axiom::U1, &[a, b, c], None)
                {
                    return;
                }
            }
        }
    }
}

fn c1_2(map: &SegmentMap, sink: &mut Sink) {
    sink.begin(Axiom::C1_2);
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            if !map.contains(a, b, b) && !sink.push(Axiom::C1_2, &[a, b], None) {
                return;
            }
        }
    }
}

fn c1_4(map: &SegmentMap, sink: &mut Sink) {
    sink.begin(Axiom::C1_4);
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            if map.row(a, b) != map.row(b, a) && !sink.push(Axiom::C1_4, &[a, b], None) {
                return;
            }
        }
    }
}

fn c1_5(rows: &Rows, sink: &mut Sink) {
    sink.begin(Axiom::C1_5);
    let map = rows.map;
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let inside = map.contains(a, c, b);
                let nested = rows.subset(a, b, a, c);
                let note = match (inside, nested) {
                    (true, false) => "=>",
                    (false, true) => "<=",
                    _ => continue,
                };
                if !sink.push(Axiom::C1_5, &[a, b, c], Some(note)) {
                    return;
                }
            }
        }
    }
}

fn c1_7(map: &SegmentMap, sink: &mut Sink) {
    sink.begin(Axiom::C1_7);
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if b != c
                    && map.contains(a, c, b)
                    && map.contains(a, b, c)
                    && !sink.push(Axiom::C1_7, &[a, b, c], None)
                {
                    return;
                }
            }
        }
    }
}

fn c1_10(rows: &mut Rows, sink: &mut Sink) {
    sink.begin(Axiom::C1_10);
    let map = rows.map;
    let n = map.len();
    let mut meet = vec![0u64; bits::words_for(n)];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                meet.copy_from_slice(rows.meet(a, b, b, c));
                for d in 0..n {
                    if map.row(b, d) == meet.as_slice()
                        && !rows.meet_is(a, d, d, c, d)
                        && !sink.push(Axiom::C1_10, &[a, b, c, d], None)
                    {
                        return;
                    }
                }
            }
        }
    }
}

fn c2_1(rows: &mut Rows, sink: &mut Sink) {
    sink.begin(Axiom::C2_1);
    let map = rows.map;
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let inside = map.contains(a, c, b);
                let meet = rows.meet_is(a, b, b, c, b);
                let join = rows.join_is(a, b, b, c, a, c);
                let failed = [
                    (inside && !meet, "in=>meet"),
                    (meet && !join, "meet=>join"),
                    (join && !inside, "join=>in"),
                ];
                for (fails, note) in failed {
                    if fails && !sink.push(Axiom::C2_1, &[a, b, c], Some(note)) {
                        return;
                    }
                }
            }
        }
    }
}

fn c5_2(map: &SegmentMap, sink: &mut Sink) {
    sink.begin(Axiom::C5_2);
    let n = map.len();
    for a in 0..n {
        for b in 0..n {
            for x in map.segment(a, b) {
                for y in map.segment(a, b) {
                    let forward = map.contains(a, y, x) && map.contains(x, b, y);
                    let backward = map.contains(a, x, y) && map.contains(y, b, x);
                    if !forward && !backward && !sink.push(Axiom::C5_2, &[a, b, x, y], None) {
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::axioms::ScanMode;
    use crate::model::{build_tree, VertexTable};
    use crate::treeops::{enumerate_labeled_trees, interval_function};

    fn labels(s: &[&str]) -> Arc<VertexTable> {
        Arc::new(VertexTable::new(s.iter().copied()).unwrap())
    }

    fn p3_map() -> SegmentMap {
        let t = build_tree(labels(&["a", "b", "c"]), [("a", "b"), ("b", "c")]).unwrap();
        interval_function(&t)
    }

    fn all() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn p3_passes_everything() {
        assert!(check_segment_axioms(&p3_map(), &all()).passed());
        assert!(check_segment_corollaries(&p3_map(), &all()).passed());
    }

    #[test]
    fn lopsided_pair_violates_t() {
        // [aa]={a}, [bb]={b}, [ab]=[ba]={a}
        let mut b = SegmentMap::builder(labels(&["a", "b"]));
        b.insert(0, 0, 0)
            .insert(1, 1, 1)
            .insert(0, 1, 0)
            .insert(1, 0, 0);
        let report = check_segment_axioms(&b.build(), &all());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom() == Axiom::T && v.witness() == [0, 1, 1]));
    }

    #[test]
    fn shortcut_violates_u1() {
        let mut b = p3_map().to_builder();
        b.set_segment(0, 2, &[0, 2]).set_segment(2, 0, &[0, 2]);
        let report = check_segment_axioms(&b.build(), &all());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom() == Axiom::U1 && v.witness() == [0, 1, 2]));
    }

    #[test]
    fn corollary_defects() {
        let mut b = SegmentMap::builder(labels(&["a", "b"]));
        b.insert(0, 0, 0)
            .insert(1, 1, 1)
            .insert(0, 1, 0)
            .insert(1, 0, 0)
            .insert(1, 0, 1);
        let r = check_segment_corollaries(&b.build(), &all());
        assert_eq!(r.first(Axiom::C1_2).unwrap().witness(), &[0, 1]);

        let mut b = SegmentMap::builder(labels(&["a", "b"]));
        b.insert(0, 0, 0)
            .insert(1, 1, 1)
            .set_segment(0, 1, &[0, 1])
            .set_segment(1, 0, &[1]);
        let r = check_segment_corollaries(&b.build(), &all());
        assert_eq!(r.first(Axiom::C1_4).unwrap().witness(), &[0, 1]);
    }

    #[test]
    fn all_small_trees_pass() {
        for n in 1..=5 {
            for t in enumerate_labeled_trees(n).unwrap() {
                let m = interval_function(&t);
                assert!(check_segment_axioms(&m, &all()).passed());
                assert!(check_segment_corollaries(&m, &all()).passed());
            }
        }
    }

    #[test]
    fn first_only_keeps_smallest_witness_per_axiom() {
        let empty = SegmentMap::builder(labels(&["a", "b", "c"])).build();
        let full = check_segment_corollaries(&empty, &all());
        let first = check_segment_corollaries(
            &empty,
            &CheckOptions::new(Default::default(), ScanMode::FirstOnly),
        );
        for axiom in first.failed_axioms() {
            assert_eq!(first.first(axiom), full.first(axiom));
            assert_eq!(
                first
                    .violations
                    .iter()
                    .filter(|v| v.axiom() == axiom)
                    .count(),
                1
            );
        }
        assert_eq!(first.failed_axioms(), full.failed_axioms());
    }
}
