//! Quotients `X = (P^1 x Y)/G` with `Y` a K3 surface, and their Enriques
//! counterparts obtained from an index-2 symplectic subgroup.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rational::{int, parse_rational, Rational};
use crate::reid_rr::IndexMultiset;

use super::profile::{indices_from_profile, SingularityProfile};

pub const TABLE4_FIXTURE: &str = include_str!("../../fixtures/table4.csv");
pub const TABLE5_FIXTURE: &str = include_str!("../../fixtures/table5.csv");

const HEADER: [&str; 6] = ["no", "group", "order", "profile", "indices", "c1c2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverType {
    K3,
    Enriques,
}

impl CoverType {
    /// `chi(O_X)` forced by the minimal resolution of `S`.
    pub fn expected_chi(self) -> i64 {
        match self {
            CoverType::K3 => 2,
            CoverType::Enriques => 1,
        }
    }
}

impl fmt::Display for CoverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverType::K3 => "K3",
            CoverType::Enriques => "Enriques",
        })
    }
}

/// One row of a quotient table. `number` and `group_label` are carried
/// through verbatim and ignored by [`QuotientScenario::key`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientScenario {
    pub number: String,
    pub group_label: String,
    pub group_order: u32,
    pub profile: SingularityProfile,
    pub cover: CoverType,
    pub expected_indices: IndexMultiset,
    pub expected_c1c2: Rational,
}

impl QuotientScenario {
    /// Arithmetic identity of a row: `(|G|, Sing(S), cover)`.
    pub fn key(&self) -> (u32, &SingularityProfile, CoverType) {
        (self.group_order, &self.profile, self.cover)
    }
}

/// `c1c2(X) = c1c2(P^1 x Y) / |G| = 48 / |G|`.
pub fn quotient_c1c2(order: u32) -> Rational {
    assert!(order >= 1, "group order must be positive");
    Rational::new(48.into(), order.into())
}

/// A `P^1`-bundle over an abelian surface has `c1c2 = 0`, and so does any
/// quotient of it that is étale in codimension 2.
pub fn abelian_cover_c1c2() -> Rational {
    int(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioCheck {
    /// (a) indices from the profile match the stated `R_X`.
    IndicesFromProfile,
    /// (b) `48/|G|` matches the stated `c1c2`.
    C1c2FromOrder,
    /// (c) `(c1c2 + weight(R_X)) / 24` equals the cover's `chi`.
    EulerCharacteristic,
}

impl fmt::Display for ScenarioCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioCheck::IndicesFromProfile => "(a) R_X from Sing(S)",
            ScenarioCheck::C1c2FromOrder => "(b) c1c2 = 48/|G|",
            ScenarioCheck::EulerCharacteristic => "(c) Euler chi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: ScenarioCheck,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub number: String,
    pub group_label: String,
    pub outcomes: Vec<CheckOutcome>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failed_checks(&self) -> Vec<ScenarioCheck> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.check)
            .collect()
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} #{} {}", self.number, self.group_label)?;
        for o in self.outcomes.iter().filter(|o| !o.passed) {
            write!(f, "\n    {}: {}", o.check, o.detail)?;
        }
        Ok(())
    }
}

fn relation(equal: bool) -> &'static str {
    if equal {
        "="
    } else {
        "≠"
    }
}

pub fn check_scenario(s: &QuotientScenario) -> ScenarioReport {
    let derived = indices_from_profile(&s.profile);
    let indices_ok = derived == s.expected_indices;
    let c1c2 = quotient_c1c2(s.group_order);
    let c1c2_ok = c1c2 == s.expected_c1c2;
    let chi = (s.expected_c1c2.clone() + s.expected_indices.weight()) / int(24);
    let chi_ok = chi == int(s.cover.expected_chi());
    ScenarioReport {
        number: s.number.clone(),
        group_label: s.group_label.clone(),
        outcomes: vec![
            CheckOutcome {
                check: ScenarioCheck::IndicesFromProfile,
                passed: indices_ok,
                detail: format!(
                    "{} gives {derived} {} {}",
                    s.profile,
                    relation(indices_ok),
                    s.expected_indices
                ),
            },
            CheckOutcome {
                check: ScenarioCheck::C1c2FromOrder,
                passed: c1c2_ok,
                detail: format!(
                    "48/{} = {c1c2} {} {}",
                    s.group_order,
                    relation(c1c2_ok),
                    s.expected_c1c2
                ),
            },
            CheckOutcome {
                check: ScenarioCheck::EulerCharacteristic,
                passed: chi_ok,
                detail: format!(
                    "(c1c2 + weight) / 24 = {chi} {} {} ({} cover)",
                    relation(chi_ok),
                    s.cover.expected_chi(),
                    s.cover
                ),
            },
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("row #{0} is not a K3 scenario")]
    NotK3(String),
    #[error("row #{number}: halving R_X gives {halved:?}, halving the profile gives {from_profile}")]
    HalvingMismatch {
        number: String,
        halved: Option<IndexMultiset>,
        from_profile: IndexMultiset,
    },
    #[error("row #{0}: c1c2 cannot be halved consistently")]
    C1c2Mismatch(String),
}

/// Keeps the K3 rows whose singularities all come in couples and halves
/// them: profile and `R_X` halved, `|G|` doubled, `c1c2` halved.
pub fn derive_enriques(k3_rows: &[QuotientScenario]) -> Result<Vec<QuotientScenario>, QuotientError> {
    let mut out = Vec::new();
    for row in k3_rows {
        if row.cover != CoverType::K3 {
            return Err(QuotientError::NotK3(row.number.clone()));
        }
        let Some(profile) = row.profile.halved() else {
            continue;
        };
        let indices = indices_from_profile(&profile);
        let halved = row.expected_indices.halved();
        if halved.as_ref() != Some(&indices) {
            return Err(QuotientError::HalvingMismatch {
                number: row.number.clone(),
                halved,
                from_profile: indices,
            });
        }
        let group_order = 2 * row.group_order;
        let c1c2 = row.expected_c1c2.clone() / int(2);
        if c1c2 != quotient_c1c2(group_order) {
            return Err(QuotientError::C1c2Mismatch(row.number.clone()));
        }
        out.push(QuotientScenario {
            number: format!("{}'", row.number),
            group_label: row.group_label.clone(),
            group_order,
            profile,
            cover: CoverType::Enriques,
            expected_indices: indices,
            expected_c1c2: c1c2,
        });
    }
    Ok(out)
}

/// Set comparison of two scenario lists by [`QuotientScenario::key`]. Rows
/// matched by key but disagreeing on `R_X` or `c1c2` are reported as
/// mismatches.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScenarioDiff {
    pub missing: Vec<QuotientScenario>,
    pub extra: Vec<QuotientScenario>,
    pub mismatched: Vec<(QuotientScenario, QuotientScenario)>,
}

impl ScenarioDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }
}

impl fmt::Display for ScenarioDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_match() {
            return f.write_str("match");
        }
        for s in &self.missing {
            writeln!(f, "  in fixture, not derived: {}", ScenarioRow(s))?;
        }
        for s in &self.extra {
            writeln!(f, "  derived, not in fixture: {}", ScenarioRow(s))?;
        }
        for (d, t) in &self.mismatched {
            writeln!(f, "  derived {} vs fixture {}", ScenarioRow(d), ScenarioRow(t))?;
        }
        Ok(())
    }
}

/// `derived` against `fixture`: `missing` are fixture rows with no derived
/// counterpart.
pub fn compare_scenarios(derived: &[QuotientScenario], fixture: &[QuotientScenario]) -> ScenarioDiff {
    let by_key = |rows: &[QuotientScenario]| -> BTreeMap<(u32, SingularityProfile, CoverType), QuotientScenario> {
        rows.iter()
            .map(|s| ((s.group_order, s.profile.clone(), s.cover), s.clone()))
            .collect()
    };
    let d = by_key(derived);
    let t = by_key(fixture);
    let mut diff = ScenarioDiff::default();
    for (k, s) in &t {
        match d.get(k) {
            None => diff.missing.push(s.clone()),
            Some(ds) => {
                if ds.expected_indices != s.expected_indices || ds.expected_c1c2 != s.expected_c1c2 {
                    diff.mismatched.push((ds.clone(), s.clone()));
                }
            }
        }
    }
    for (k, s) in &d {
        if !t.contains_key(k) {
            diff.extra.push(s.clone());
        }
    }
    diff
}

/// Fixture-format line for a scenario (without trailing newline).
pub struct ScenarioRow<'a>(pub &'a QuotientScenario);

impl fmt::Display for ScenarioRow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        write!(
            f,
            "{},{},{},\"{}\",\"{}\",{}",
            s.number, s.group_label, s.group_order, s.profile, s.expected_indices, s.expected_c1c2
        )
    }
}

pub fn render_scenarios(rows: &[QuotientScenario]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for s in rows {
        out.push_str(&ScenarioRow(s).to_string());
        out.push('\n');
    }
    out
}

#[derive(Debug, Error)]
pub enum ScenarioFixtureError {
    #[error("fixture line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("fixture header must be `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn parse_scenarios(text: &str, cover: CoverType) -> Result<Vec<QuotientScenario>, ScenarioFixtureError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(ScenarioFixtureError::Header {
            expected: HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |message: String| ScenarioFixtureError::Row { line, message };
        if record.len() != HEADER.len() {
            return Err(err(format!("expected {} columns, found {}", HEADER.len(), record.len())));
        }
        let group_order: u32 = record[2]
            .trim()
            .parse()
            .map_err(|_| err(format!("bad order `{}`", &record[2])))?;
        if group_order < 1 {
            return Err(err("group order must be positive".into()));
        }
        rows.push(QuotientScenario {
            number: record[0].trim().to_string(),
            group_label: record[1].trim().to_string(),
            group_order,
            profile: record[3].parse().map_err(|e| err(format!("{e}")))?,
            cover,
            expected_indices: record[4].parse().map_err(|e| err(format!("{e}")))?,
            expected_c1c2: parse_rational(&record[5]).map_err(|e| err(e.to_string()))?,
        });
    }
    Ok(rows)
}

pub fn table4() -> Vec<QuotientScenario> {
    parse_scenarios(TABLE4_FIXTURE, CoverType::K3).expect("embedded table 4 parses")
}

pub fn table5() -> Vec<QuotientScenario> {
    parse_scenarios(TABLE5_FIXTURE, CoverType::Enriques).expect("embedded table 5 parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn row<'a>(rows: &'a [QuotientScenario], no: &str) -> &'a QuotientScenario {
        rows.iter().find(|s| s.number == no).unwrap()
    }

    #[test]
    fn c1c2_from_order() {
        assert_eq!(quotient_c1c2(60), frac(4, 5));
        assert_eq!(quotient_c1c2(2), int(24));
        assert_eq!(quotient_c1c2(24), int(2));
        assert_eq!(abelian_cover_c1c2(), int(0));
    }

    #[test]
    fn fixtures_have_the_expected_sizes() {
        assert_eq!(table4().len(), 15);
        assert_eq!(table5().len(), 8);
    }

    #[test]
    fn named_rows_pass() {
        let t4 = table4();
        let r = row(&t4, "17");
        assert_eq!(r.group_order, 12);
        assert_eq!(r.expected_indices.to_string(), "2^8,3^12");
        assert!(check_scenario(r).passed());
        let t5 = table5();
        let r = row(&t5, "5'");
        assert_eq!(r.expected_c1c2, frac(24, 5));
        assert!(check_scenario(r).passed());
    }

    #[test]
    fn tampered_c1c2_fails_b_and_c() {
        let mut r = row(&table4(), "1").clone();
        r.expected_c1c2 = int(23);
        let rep = check_scenario(&r);
        assert!(!rep.passed());
        assert_eq!(
            rep.failed_checks(),
            vec![ScenarioCheck::C1c2FromOrder, ScenarioCheck::EulerCharacteristic]
        );
    }

    #[test]
    fn tampered_order_fails_b() {
        let mut r = row(&table4(), "55").clone();
        r.group_order = 59;
        let rep = check_scenario(&r);
        assert_eq!(rep.failed_checks(), vec![ScenarioCheck::C1c2FromOrder]);
        assert!(rep.to_string().contains("48/59 = 48/59 ≠ 4/5"));
    }

    #[test]
    fn enriques_derivation_examples() {
        let t4 = table4();
        let derived = derive_enriques(&t4).unwrap();
        let first = derived.iter().find(|s| s.number == "1'").unwrap();
        assert_eq!(first.group_order, 4);
        assert_eq!(first.profile.to_string(), "4A_1");
        assert_eq!(first.expected_indices.to_string(), "2^8");
        assert_eq!(first.expected_c1c2, int(12));
        assert!(derived.iter().all(|s| s.number != "8'" && s.number != "14'"));
        assert!(derive_enriques(&table5()).is_err());
    }

    #[test]
    fn render_round_trips() {
        let t5 = table5();
        let text = render_scenarios(&t5);
        assert_eq!(parse_scenarios(&text, CoverType::Enriques).unwrap(), t5);
    }
}
