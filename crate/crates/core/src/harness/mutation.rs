//! Single-bit mutations of tree objects, checked by the full battery.
//!
//! Every reported witness is re-evaluated independently. A mutant survives
//! when the whole battery passes and some reconstruction method verifies.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{
    check_burigana_axioms, check_nonstrict_axioms, check_segment_axioms, check_segment_corollaries,
    check_strict_axioms, check_strict_derived, revalidate, AxiomReport, CheckOptions, ScanMode,
    Semantics, Subject,
};
use crate::model::{SegmentMap, TernaryRelation, VertexId};
use crate::reconstruct::{tree_from_nonstrict, tree_from_segments, tree_from_strict, Method};
use crate::treeops::{interval_function, random_tree, strict_betweenness, tree_betweenness};

pub const MIN_SIZE: usize = 3;
pub const MAX_SIZE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// `x` toggled in `[uv]`.
    Segment(VertexId, VertexId, VertexId),
    StrictTriple(VertexId, VertexId, VertexId),
    NonstrictTriple(VertexId, VertexId, VertexId),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MutationSummary {
    pub iterations: usize,
    /// Iterations in which every reported witness re-validated.
    pub revalidated: usize,
    pub witnesses: usize,
    /// Mutated strict objects that left the strict domain.
    pub left_strict_domain: usize,
    pub survivors: Vec<Mutation>,
}

impl MutationSummary {
    pub fn passed(&self) -> bool {
        self.revalidated == self.iterations && self.survivors.is_empty()
    }
}

impl fmt::Display for MutationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "witness re-validation: {}/{}",
            self.revalidated, self.iterations
        )?;
        writeln!(f, "survivors: {}", self.survivors.len())?;
        writeln!(f, "witnesses checked: {}", self.witnesses)?;
        writeln!(f, "left strict domain: {}", self.left_strict_domain)?;
        for m in &self.survivors {
            writeln!(f, "survivor: {m:?}")?;
        }
        Ok(())
    }
}

struct Outcome {
    failed: bool,
    witnesses: usize,
    all_valid: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failed: false,
            witnesses: 0,
            all_valid: true,
        }
    }

    fn absorb(&mut self, report: &AxiomReport, subject: Subject<'_>, semantics: Semantics) {
        self.failed |= !report.passed();
        for v in &report.violations {
            self.witnesses += 1;
            self.all_valid &= revalidate(v, subject, semantics);
        }
    }
}

fn all(semantics: Semantics) -> CheckOptions {
    CheckOptions::new(semantics, ScanMode::All)
}

fn battery_segments(map: &SegmentMap, out: &mut Outcome) -> bool {
    let o = all(Semantics::Rotation);
    out.absorb(
        &check_segment_axioms(map, &o),
        Subject::Segments(map),
        Semantics::Rotation,
    );
    out.absorb(
        &check_segment_corollaries(map, &o),
        Subject::Segments(map),
        Semantics::Rotation,
    );
    Method::BOTH
        .iter()
        .any(|&m| tree_from_segments(map, m, None).is_ok())
}

fn battery_strict(b: &TernaryRelation, out: &mut Outcome) -> bool {
    for s in Semantics::BOTH {
        let reports = [
            check_strict_axioms(b, &all(s)),
            check_strict_derived(b, &all(s)),
            check_burigana_axioms(b, &all(s)),
        ];
        for report in reports {
            match report {
                Ok(r) => out.absorb(&r, Subject::Relation(b), s),
                Err(_) => out.failed = true,
            }
        }
    }
    Method::BOTH
        .iter()
        .any(|&m| tree_from_strict(b, m, None).is_ok())
}

fn battery_nonstrict(c: &TernaryRelation, out: &mut Outcome) -> bool {
    for s in Semantics::BOTH {
        out.absorb(&check_nonstrict_axioms(c, &all(s)), Subject::Relation(c), s);
    }
    Method::BOTH
        .iter()
        .any(|&m| tree_from_nonstrict(c, m, None).is_ok())
}

fn toggle(r: &TernaryRelation, u: VertexId, v: VertexId, w: VertexId) -> TernaryRelation {
    let mut b = r.to_builder();
    if b.contains(u, v, w) {
        b.remove(u, v, w);
    } else {
        b.insert(u, v, w);
    }
    b.build()
}

pub fn mutation_witness_test(count: usize, seed: u64) -> MutationSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = MutationSummary::default();
    for _ in 0..count {
        let n = rng.gen_range(MIN_SIZE..=MAX_SIZE);
        let tree = random_tree(n, &mut rng);
        let (u, v, w) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        let mut out = Outcome::new();
        let (mutation, rebuilt) = match rng.gen_range(0..3) {
            0 => {
                let mut b = interval_function(&tree).to_builder();
                if b.contains(u, v, w) {
                    b.remove(u, v, w);
                } else {
                    b.insert(u, v, w);
                }
                (
                    Mutation::Segment(u, v, w),
                    battery_segments(&b.build(), &mut out),
                )
            }
            1 => {
                let b = toggle(&strict_betweenness(&tree), u, v, w);
                if !b.is_strict() {
                    summary.left_strict_domain += 1;
                }
                (
                    Mutation::StrictTriple(u, v, w),
                    battery_strict(&b, &mut out),
                )
            }
            _ => {
                let c = toggle(&tree_betweenness(&tree), u, v, w);
                (
                    Mutation::NonstrictTriple(u, v, w),
                    battery_nonstrict(&c, &mut out),
                )
            }
        };
        summary.iterations += 1;
        summary.witnesses += out.witnesses;
        if out.all_valid {
            summary.revalidated += 1;
        }
        if !out.failed && rebuilt {
            summary.survivors.push(mutation);
        }
    }
    summary
}
