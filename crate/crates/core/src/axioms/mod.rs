//! Exhaustive axiom scans with witness extraction.
//!
//! Every checker walks its quantifier prefix in lexicographic id order, so
//! the violations it emits are already in canonical order and the first one
//! found for an axiom is its lexicographically smallest witness. A report
//! never errors on semantic defects: they become [`Violation`]s. The only
//! error is handing a non-strict relation to a checker whose hypothesis is
//! strictness.

mod nonstrict;
mod segments;
mod strict;
mod witness;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Axiom, TernaryRelation, VertexId, VertexTable, Violation};

pub use nonstrict::check_nonstrict_axioms;
pub use segments::{check_segment_axioms, check_segment_corollaries};
pub use strict::{check_burigana_axioms, check_strict_axioms, check_strict_derived};
pub use witness::{revalidate, Subject};

/// Reading of the `N(u, v, w)` predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Semantics {
    /// The three cyclic rotations of `(u, v, w)` are absent.
    #[default]
    Rotation,
    /// All six permutations are absent.
    Unordered,
}

impl Semantics {
    pub const BOTH: [Semantics; 2] = [Semantics::Rotation, Semantics::Unordered];
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Rotation => "rotation",
            Semantics::Unordered => "unordered",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rotation" => Ok(Semantics::Rotation),
            "unordered" => Ok(Semantics::Unordered),
            other => Err(format!("unknown semantics {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Collect every violation.
    #[default]
    All,
    /// Stop each axiom's scan at its first (smallest) witness.
    FirstOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    pub semantics: Semantics,
    pub mode: ScanMode,
}

impl CheckOptions {
    pub fn new(semantics: Semantics, mode: ScanMode) -> Self {
        CheckOptions { semantics, mode }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation is not strict: ({rendered}) has a repeated component")]
pub struct NotStrict {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    rendered: String,
}

pub(crate) fn require_strict(relation: &TernaryRelation) -> Result<(), NotStrict> {
    match relation.first_repeated_triple() {
        None => Ok(()),
        Some((u, v, w)) => Err(NotStrict {
            u,
            v,
            w,
            rendered: relation.vertices().render(&[u, v, w]),
        }),
    }
}

/// `N(u, v, w)`: pairwise distinct and no rotation (or permutation) in the relation.
pub fn n_predicate(
    relation: &TernaryRelation,
    u: VertexId,
    v: VertexId,
    w: VertexId,
    semantics: Semantics,
) -> bool {
    if u == v || v == w || u == w {
        return false;
    }
    let b = |x, y, z| relation.contains(x, y, z);
    let rotations = b(u, v, w) || b(v, w, u) || b(w, u, v);
    match semantics {
        Semantics::Rotation => !rotations,
        Semantics::Unordered => !(rotations || b(w, v, u) || b(v, u, w) || b(u, w, v)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub checked: Vec<Axiom>,
    pub violations: Vec<Violation>,
    /// Present only when an `N`-dependent axiom was checked.
    pub semantics: Option<Semantics>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed_axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(Violation::axiom).collect()
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom() == axiom)
    }

    /// Concatenates two reports, keeping canonical order.
    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checked.extend(other.checked);
        self.checked.sort();
        self.checked.dedup();
        self.violations.extend(other.violations);
        self.violations.sort();
        self.semantics = self.semantics.or(other.semantics);
        self
    }

    /// One line per violation, then a summary line.
    pub fn render(&self, vertices: &VertexTable) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(&v.render(vertices));
            out.push('\n');
        }
        let checked: Vec<&str> = self.checked.iter().map(|a| a.name()).collect();
        out.push_str(&format!("summary: checked {}", checked.join(",")));
        if let Some(s) = self.semantics {
            out.push_str(&format!("; semantics {s}"));
        }
        out.push_str(&format!("; violations {}\n", self.violations.len()));
        out
    }
}

/// Collects violations for one axiom at a time, honoring the scan mode.
pub(crate) struct Sink {
    mode: ScanMode,
    violations: Vec<Violation>,
    checked: Vec<Axiom>,
}

impl Sink {
    pub fn new(mode: ScanMode) -> Self {
        Sink {
            mode,
            violations: Vec::new(),
            checked: Vec::new(),
        }
    }

    pub fn begin(&mut self, axiom: Axiom) {
        self.checked.push(axiom);
    }

    /// Records a violation; returns false when the current scan should stop.
    pub fn push(&mut self, axiom: Axiom, witness: &[VertexId], note: Option<&'static str>) -> bool {
        self.violations.push(Violation::at(axiom, witness, note));
        self.mode == ScanMode::All
    }

    pub fn finish(mut self, semantics: Option<Semantics>) -> AxiomReport {
        self.violations.sort();
        AxiomReport {
            checked: self.checked,
            violations: self.violations,
            semantics,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    #[test]
    fn n_predicate_examples() {
        let b1 = fixtures::b1();
        let (u, v, w) = (0, 1, 2);
        assert!(n_predicate(&b1, u, w, v, Semantics::Rotation));
        assert!(!n_predicate(&b1, u, w, v, Semantics::Unordered));
        for s in Semantics::BOTH {
            assert!(!n_predicate(&b1, u, u, w, s));
            assert!(!n_predicate(
                &TernaryRelation::empty(b1.vertices().clone()),
                v,
                w,
                v,
                s
            ));
        }
    }

    #[test]
    fn semantics_parse() {
        assert_eq!("unordered".parse(), Ok(Semantics::Unordered));
        assert!("cyclic".parse::<Semantics>().is_err());
        assert_eq!(Semantics::default().to_string(), "rotation");
    }
}
