//! Fixture audit: each fixture against (S1)-(S4) and (T1)-(T5).

use std::fmt;

use super::fixtures;
use crate::axioms::{
    check_nonstrict_axioms, check_strict_axioms, CheckOptions, ScanMode, Semantics,
};
use crate::model::{Axiom, TernaryRelation, VertexTable, Violation};

pub const STRICT_COLUMNS: [Axiom; 4] = [Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4];
pub const NONSTRICT_COLUMNS: [Axiom; 5] = [Axiom::T1, Axiom::T2, Axiom::T3, Axiom::T4, Axiom::T5];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditCell {
    Pass,
    Fail(Violation),
    /// The strict checkers refuse relations with repeated components.
    NotApplicable,
}

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub name: &'static str,
    /// The fixture as listed.
    pub relation: TernaryRelation,
    /// The relation the T columns were evaluated on.
    pub t_subject: TernaryRelation,
    pub cells: Vec<(Axiom, AuditCell)>,
}

impl AuditRow {
    pub fn cell(&self, axiom: Axiom) -> Option<&AuditCell> {
        self.cells.iter().find(|(a, _)| *a == axiom).map(|(_, c)| c)
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.cells
            .iter()
            .filter(|(_, c)| matches!(c, AuditCell::Fail(_)))
            .map(|(a, _)| *a)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AuditMatrix {
    pub semantics: Semantics,
    /// T columns evaluated on the raw fixture instead of `B ∪ A`.
    pub raw_t_columns: bool,
    pub rows: Vec<AuditRow>,
}

impl AuditMatrix {
    pub fn row(&self, name: &str) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// `B` together with every triple `(u,u,w)` and `(u,w,w)`.
pub fn augment(relation: &TernaryRelation) -> TernaryRelation {
    let n = relation.len();
    let mut b = relation.to_builder();
    for u in 0..n {
        for w in 0..n {
            b.insert(u, u, w);
            b.insert(u, w, w);
        }
    }
    b.build()
}

fn cell_for(report: &crate::axioms::AxiomReport, axiom: Axiom) -> AuditCell {
    match report.first(axiom) {
        Some(v) => AuditCell::Fail(v.clone()),
        None => AuditCell::Pass,
    }
}

pub fn audit_fixtures(semantics: Semantics, raw_t_columns: bool) -> AuditMatrix {
    let options = CheckOptions::new(semantics, ScanMode::FirstOnly);
    let rows = fixtures::all()
        .into_iter()
        .map(|(name, relation)| {
            let mut cells = Vec::with_capacity(9);
            match check_strict_axioms(&relation, &options) {
                Ok(report) => {
                    cells.extend(STRICT_COLUMNS.iter().map(|&a| (a, cell_for(&report, a))))
                }
                Err(_) => cells.extend(
                    STRICT_COLUMNS
                        .iter()
                        .map(|&a| (a, AuditCell::NotApplicable)),
                ),
            }
            let t_subject = if raw_t_columns {
                relation.clone()
            } else {
                augment(&relation)
            };
            let report = check_nonstrict_axioms(&t_subject, &options);
            cells.extend(NONSTRICT_COLUMNS.iter().map(|&a| (a, cell_for(&report, a))));
            AuditRow {
                name,
                relation,
                t_subject,
                cells,
            }
        })
        .collect();
    AuditMatrix {
        semantics,
        raw_t_columns,
        rows,
    }
}

fn render_cell(cell: &AuditCell, vertices: &VertexTable) -> String {
    match cell {
        AuditCell::Pass => "P".into(),
        AuditCell::NotApplicable => "n/a".into(),
        AuditCell::Fail(v) => {
            let labels: Vec<&str> = v.witness().iter().map(|&x| vertices.label(x)).collect();
            format!("F({})", labels.join(","))
        }
    }
}

impl fmt::Display for AuditMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = if self.raw_t_columns {
            "raw"
        } else {
            "augmented"
        };
        writeln!(f, "semantics: {}; t-columns: {t}", self.semantics)?;
        let vertices = fixtures::vertices();
        let mut table = vec![std::iter::once("fixture".to_string())
            .chain(
                STRICT_COLUMNS
                    .iter()
                    .chain(&NONSTRICT_COLUMNS)
                    .map(|a| a.name().to_string()),
            )
            .collect::<Vec<_>>()];
        for row in &self.rows {
            let mut line = vec![row.name.to_string()];
            line.extend(row.cells.iter().map(|(_, c)| render_cell(c, &vertices)));
            table.push(line);
        }
        let widths: Vec<usize> = (0..table[0].len())
            .map(|i| table.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        for line in &table {
            let padded: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "{}", padded.join("  ").trim_end())?;
        }
        for row in &self.rows {
            let failed: Vec<&str> = row.failed().iter().map(|a| a.name()).collect();
            let failed = if failed.is_empty() {
                "none".to_string()
            } else {
                failed.join(" ")
            };
            writeln!(f, "{} fails: {failed}", row.name)?;
        }
        Ok(())
    }
}
