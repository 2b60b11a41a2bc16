//! The worked-example table and its reproduction.

use std::time::Instant;

use quatsym_core::{classify, AlgebraSpec, Place, Status, Verdict};
use serde::{Deserialize, Serialize};

use crate::report::VerdictReport;

/// Extra structure a row must exhibit besides its status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Exactly these ramified places, in display form.
    Ramified(&'static [&'static str]),
    Discriminant(i128),
    /// Nontrivial above `ell`.
    NontrivialAbove(i64),
    TrivialAbove(i64),
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub id: &'static str,
    pub spec: AlgebraSpec,
    pub expected: Status,
    pub checks: &'static [Check],
}

const fn qi(id: &'static str, a: i64, b: i64, expected: Status, checks: &'static [Check]) -> Fixture {
    Fixture { id, spec: AlgebraSpec::QuaternionQi { a, b }, expected, checks }
}

const fn q(id: &'static str, a: i64, b: i64, expected: Status, checks: &'static [Check]) -> Fixture {
    Fixture { id, spec: AlgebraSpec::QuaternionQ { a, b }, expected, checks }
}

const fn sym(id: &'static str, q: i64, alpha: i64, p: i64, expected: Status, checks: &'static [Check]) -> Fixture {
    Fixture { id, spec: AlgebraSpec::Symbol { q, alpha, p }, expected, checks }
}

use Status::{Division, Split};

pub const WORKED_EXAMPLES: &[Fixture] = &[
    qi("qi:10:29", 10, 29, Division, &[]),
    qi("qi:15:29", 15, 29, Division, &[]),
    qi("qi:5:29", 5, 29, Split, &[]),
    qi("qi:33:29", 33, 29, Split, &[Check::Ramified(&[])]),
    q("q:33:29", 33, 29, Division, &[Check::Discriminant(33), Check::Ramified(&["p=3", "p=11"])]),
    q("q:35:29", 35, 29, Split, &[]),
    qi("qi:35:29", 35, 29, Split, &[]),
    sym("sym3:7:29", 3, 7, 29, Split, &[]),
    sym("sym3:7:43", 3, 7, 43, Division, &[]),
    sym("sym3:7:13", 3, 7, 13, Division, &[]),
    sym("sym3:7:19", 3, 7, 19, Division, &[Check::NontrivialAbove(7), Check::TrivialAbove(19)]),
    sym("sym5:19:37", 5, 19, 37, Split, &[]),
    sym("sym5:19:11", 5, 19, 11, Division, &[]),
    sym("sym5:19:31", 5, 19, 31, Division, &[]),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub id: String,
    pub expected: String,
    pub computed: String,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Failed structural checks, empty when the row matches.
    pub problems: Vec<String>,
    pub report: Option<VerdictReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub schema: u32,
    pub rows: Vec<RowReport>,
    pub matched: usize,
    pub total: usize,
}

impl ReproduceReport {
    pub fn all_match(&self) -> bool {
        self.matched == self.total
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<12} {:<10} {:<12} {}\n", "row", "expected", "computed", "match");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<12} {:<10} {:<12} {}\n",
                r.id,
                r.expected,
                r.computed,
                if r.matched { "yes" } else { "NO" }
            ));
            for p in &r.problems {
                out.push_str(&format!("    {p}\n"));
            }
        }
        out.push_str(&format!("{}/{} rows match\n", self.matched, self.total));
        out
    }
}

fn above(v: &Verdict, ell: i64) -> Option<bool> {
    v.evidence.iter().find(|e| matches!(e.place, Place::Cyclo { ell: l, .. } if l == ell)).map(|e| e.trivial)
}

fn check_problems(v: &Verdict, checks: &[Check]) -> Vec<String> {
    let mut out = Vec::new();
    for c in checks {
        match *c {
            Check::Ramified(want) => {
                let got: Vec<String> = v.ramified.iter().map(ToString::to_string).collect();
                if got != want {
                    out.push(format!("ramified {got:?}, expected {want:?}"));
                }
            }
            Check::Discriminant(d) => {
                if v.discriminant != Some(d) {
                    out.push(format!("discriminant {:?}, expected {d}", v.discriminant));
                }
            }
            Check::NontrivialAbove(ell) => {
                if above(v, ell) != Some(false) {
                    out.push(format!("symbol above {ell} should be nontrivial"));
                }
            }
            Check::TrivialAbove(ell) => {
                if above(v, ell) != Some(true) {
                    out.push(format!("symbol above {ell} should be trivial"));
                }
            }
        }
    }
    out
}

fn reproduce_row(f: &Fixture) -> RowReport {
    let start = Instant::now();
    let (computed, report, mut problems) = match classify(f.spec) {
        Ok(v) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            (v.status.as_str().to_string(), Some(VerdictReport::new(&v, ms)), check_problems(&v, f.checks))
        }
        Err(e) => ("error".to_string(), None, vec![e.to_string()]),
    };
    if computed != f.expected.as_str() {
        problems.insert(0, format!("status {computed}, expected {}", f.expected));
    }
    RowReport {
        id: f.id.to_string(),
        expected: f.expected.as_str().to_string(),
        computed,
        matched: problems.is_empty(),
        problems,
        report,
    }
}

/// Runs `table`, or only the row named `only`. `None` when no row has that id.
pub fn reproduce(table: &[Fixture], only: Option<&str>) -> Option<ReproduceReport> {
    let rows: Vec<RowReport> = table.iter().filter(|f| only.is_none_or(|id| f.id == id)).map(reproduce_row).collect();
    if rows.is_empty() && only.is_some() {
        return None;
    }
    let matched = rows.iter().filter(|r| r.matched).count();
    Some(ReproduceReport { schema: crate::report::SCHEMA, total: rows.len(), matched, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_table_matches() {
        let r = reproduce(WORKED_EXAMPLES, None).unwrap();
        assert_eq!((r.matched, r.total), (14, 14), "{}", r.table());
    }

    #[test]
    fn single_row() {
        let r = reproduce(WORKED_EXAMPLES, Some("qi:10:29")).unwrap();
        assert_eq!((r.matched, r.total), (1, 1));
        assert!(reproduce(WORKED_EXAMPLES, Some("qi:1:1")).is_none());
    }

    #[test]
    fn tampered_rows_are_caught() {
        let mut table = WORKED_EXAMPLES.to_vec();
        table[0].expected = Status::Split;
        table[4].checks = &[Check::Discriminant(35)];
        table[10].checks = &[Check::NontrivialAbove(19)];
        let r = reproduce(&table, None).unwrap();
        assert_eq!(r.matched, 11);
        assert!(!r.all_match());
        assert_eq!(r.rows[0].problems[0], "status division, expected split");
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = WORKED_EXAMPLES.iter().map(|f| f.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), WORKED_EXAMPLES.len());
    }
}
