//! Closed-form subgroup and class counts.
//!
//! Each count is a signed combination of divisor sums at `n/2^k`,
//! optionally divided by 2 or 4. The division is exact for every `n`; a
//! remainder is reported as a consistency error rather than rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::ArithFn::{self, Chi, Omega, Sigma0, Sigma1, Sigma2, D3};
use crate::classify::IsoType;
use crate::error::{consistency, domain, CheckedI64, Error, Result};
use crate::words::Group;

/// Version stamped into every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CountKind {
    Subgroups,
    Classes,
}

impl CountKind {
    pub fn label(self) -> &'static str {
        match self {
            CountKind::Subgroups => "SUBGROUPS",
            CountKind::Classes => "CLASSES",
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CountKind> {
        match s.to_ascii_lowercase().as_str() {
            "subgroups" | "s" => Ok(CountKind::Subgroups),
            "classes" | "c" => Ok(CountKind::Classes),
            other => domain(format!("unknown count kind '{other}'")),
        }
    }
}

/// `(1/divisor) · Σ coef · f(n / den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formula {
    pub divisor: i64,
    pub terms: &'static [(i64, ArithFn, u64)],
}

const fn f(terms: &'static [(i64, ArithFn, u64)]) -> Formula {
    Formula { divisor: 1, terms }
}

const fn frac(divisor: i64, terms: &'static [(i64, ArithFn, u64)]) -> Formula {
    Formula { divisor, terms }
}

impl Formula {
    pub fn eval(&self, n: u64) -> Result<u64> {
        const CTX: &str = "formula evaluation";
        let mut acc: i64 = 0;
        for &(coef, func, den) in self.terms {
            let v = i64::try_from(func.scaled(n, den)?).map_err(|_| Error::Overflow(CTX))?;
            acc = acc.add_or(coef.mul_or(v, CTX)?, CTX)?;
        }
        if acc % self.divisor != 0 {
            return consistency(format!("formula sum {acc} at n={n} is not divisible by {}", self.divisor));
        }
        let v = acc / self.divisor;
        if v < 0 {
            return consistency(format!("formula value {v} at n={n} is negative"));
        }
        Ok(v as u64)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisor != 1 {
            write!(fm, "(1/{})·(", self.divisor)?;
        }
        for (i, &(coef, func, den)) in self.terms.iter().enumerate() {
            let sign = match (i, coef < 0) {
                (0, false) => "",
                (0, true) => "−",
                (_, false) => " + ",
                (_, true) => " − ",
            };
            fm.write_str(sign)?;
            if coef.abs() != 1 {
                write!(fm, "{}", coef.abs())?;
            }
            let arg = if den == 1 { "n".to_string() } else { format!("n/{den}") };
            write!(fm, "{}({arg})", func.label())?;
        }
        if self.divisor != 1 {
            fm.write_str(")")?;
        }
        Ok(())
    }
}

// Subgroup counts shared by both Bieberbach ambients.
const S_G1: Formula = f(&[(1, Omega, 4)]);
const S_G2: Formula = f(&[(1, Omega, 2), (-1, Omega, 4)]);
const S_B1: Formula = f(&[(2, Chi, 2), (-2, Chi, 4)]);
const S_B2: Formula = f(&[(4, Chi, 4), (-4, Chi, 8)]);
const C_G1: Formula = frac(4, &[(1, Omega, 4), (3, Sigma2, 4), (9, Sigma2, 8)]);

/// The formula for `(ambient, type, kind)`, if one is defined.
pub fn formula(ambient: Group, t: IsoType, kind: CountKind) -> Result<Formula> {
    use CountKind::{Classes as C, Subgroups as S};
    use IsoType as T;
    let found = match (ambient, kind, t) {
        (Group::B3 | Group::B4, S, T::G1) => S_G1,
        (Group::B3 | Group::B4, S, T::G2) => S_G2,
        (Group::B3 | Group::B4, S, T::B1) => S_B1,
        (Group::B3 | Group::B4, S, T::B2) => S_B2,
        (Group::B3, S, T::B3) => f(&[(1, Chi, 1), (-3, Chi, 2), (2, Chi, 4)]),
        (Group::B3, S, T::B4) => f(&[(2, Chi, 2), (-6, Chi, 4), (4, Chi, 8)]),
        (Group::B4, S, T::B4) => f(&[(1, Chi, 1), (-5, Chi, 2), (8, Chi, 4), (-4, Chi, 8)]),

        (Group::B3 | Group::B4, C, T::G1) => C_G1,
        (Group::B3, C, T::G2) => frac(
            2,
            &[
                (1, Sigma2, 2),
                (2, Sigma2, 4),
                (-3, Sigma2, 8),
                (1, D3, 2),
                (-1, D3, 4),
                (1, D3, 8),
                (-3, D3, 16),
                (2, D3, 32),
            ],
        ),
        (Group::B3, C, T::B1) => f(&[(1, Sigma2, 2), (-1, Sigma2, 8), (1, D3, 2), (-1, D3, 8)]),
        (Group::B3, C, T::B2) => f(&[(2, Sigma2, 4), (-2, Sigma2, 8), (1, D3, 4), (-1, D3, 16)]),
        (Group::B3, C, T::B3) => f(&[(1, D3, 1), (-1, D3, 2), (-1, D3, 4), (1, D3, 8)]),
        (Group::B3, C, T::B4) => f(&[(2, D3, 2), (-4, D3, 4), (2, D3, 8)]),
        (Group::B4, C, T::G2) => frac(
            2,
            &[
                (1, Sigma2, 2),
                (2, Sigma2, 4),
                (-3, Sigma2, 8),
                (1, D3, 2),
                (-1, D3, 4),
                (-3, D3, 8),
                (5, D3, 16),
                (-2, D3, 32),
            ],
        ),
        (Group::B4, C, T::B1) => f(&[(1, Sigma2, 2), (-1, Sigma2, 8), (1, D3, 2), (-2, D3, 4), (1, D3, 8)]),
        (Group::B4, C, T::B2) => f(&[(2, Sigma2, 4), (-2, Sigma2, 8), (1, D3, 4), (-2, D3, 8), (1, D3, 16)]),
        (Group::B4, C, T::B4) => f(&[(1, D3, 1), (-3, D3, 2), (3, D3, 4), (-1, D3, 8)]),

        (Group::Gamma, S, T::Z2) => f(&[(1, Sigma1, 2)]),
        (Group::Gamma, S, T::Klein) => f(&[(1, Sigma1, 1), (-1, Sigma1, 2)]),
        (Group::Gamma, C, T::Z2) => frac(2, &[(1, Sigma1, 2), (1, Sigma0, 2), (1, Sigma0, 4)]),
        (Group::Gamma, C, T::Klein) => f(&[(1, Sigma0, 1), (-1, Sigma0, 4)]),

        _ => {
            return domain(format!("no {kind} formula for type {t} in {ambient}"));
        }
    };
    Ok(found)
}

/// The `B3`-in-`B3` class count with the last sign flipped,
/// `d₃(n) − d₃(n/2) − d₃(n/4) − d₃(n/8)`. This variant appears at the end of
/// one derivation of the count but disagrees with orbit enumeration from
/// `n = 8` on; it is kept only as a documented witness.
pub const C_B3_B3_MINUS_VARIANT: Formula = f(&[(1, D3, 1), (-1, D3, 2), (-1, D3, 4), (-1, D3, 8)]);

pub fn s_count(ambient: Group, t: IsoType, n: u64) -> Result<u64> {
    formula(ambient, t, CountKind::Subgroups)?.eval(n)
}

pub fn c_count(ambient: Group, t: IsoType, n: u64) -> Result<u64> {
    formula(ambient, t, CountKind::Classes)?.eval(n)
}

pub fn count(ambient: Group, t: IsoType, kind: CountKind, n: u64) -> Result<u64> {
    formula(ambient, t, kind)?.eval(n)
}

/// The types with formulas in `ambient`.
pub fn defined_types(ambient: Group) -> Result<&'static [IsoType]> {
    match ambient {
        Group::Gamma | Group::B3 | Group::B4 => Ok(IsoType::types_of(ambient)),
        g => domain(format!("no counting formulas for {g}")),
    }
}

/// Sum of the per-type counts.
pub fn total_counts(ambient: Group, kind: CountKind, n: u64) -> Result<u64> {
    let mut total = 0u64;
    for &t in defined_types(ambient)? {
        total = total.checked_add(count(ambient, t, kind, n)?).ok_or(Error::Overflow("total count"))?;
    }
    Ok(total)
}

/// One row of a [`CountTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub ambient: Group,
    pub kind: CountKind,
    pub iso_type: IsoType,
    pub n: u64,
    pub value: u64,
}

/// Counts keyed by `(type, n)` for one ambient and kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub ambient: Group,
    pub kind: CountKind,
    pub rows: BTreeMap<(IsoType, u64), u64>,
}

#[derive(Serialize)]
struct CountTableJson<'a> {
    schema_version: u32,
    ambient: Group,
    kind: CountKind,
    rows: &'a [CountRow],
}

/// CSV column order for count tables.
pub const COUNT_CSV_HEADER: [&str; 5] = ["ambient", "kind", "iso_type", "n", "value"];

impl CountTable {
    /// Evaluate every defined type (or only `only`, if given) at each `n`.
    pub fn build(
        ambient: Group,
        kind: CountKind,
        ns: impl IntoIterator<Item = u64>,
        only: Option<IsoType>,
    ) -> Result<CountTable> {
        let types = defined_types(ambient)?;
        if let Some(t) = only {
            if !types.contains(&t) {
                return domain(format!("no {kind} formula for type {t} in {ambient}"));
            }
        }
        let mut rows = BTreeMap::new();
        for n in ns {
            for &t in types.iter().filter(|&&t| only.is_none_or(|o| o == t)) {
                rows.insert((t, n), count(ambient, t, kind, n)?);
            }
        }
        Ok(CountTable { ambient, kind, rows })
    }

    /// Rows ordered by `n`, then by type in table order.
    pub fn ordered_rows(&self) -> Vec<CountRow> {
        let mut out: Vec<CountRow> = self
            .rows
            .iter()
            .map(|(&(iso_type, n), &value)| CountRow { ambient: self.ambient, kind: self.kind, iso_type, n, value })
            .collect();
        out.sort_by_key(|r| (r.n, r.iso_type));
        out
    }

    pub fn to_json(&self) -> String {
        let rows = self.ordered_rows();
        let doc =
            CountTableJson { schema_version: SCHEMA_VERSION, ambient: self.ambient, kind: self.kind, rows: &rows };
        serde_json::to_string_pretty(&doc).expect("count tables serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in self.ordered_rows() {
            w.serialize(r).expect("in-memory csv");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8");
        let body = if body.is_empty() { format!("{}\n", COUNT_CSV_HEADER.join(",")) } else { body };
        format!("#schema_version={SCHEMA_VERSION}\n{body}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use IsoType as T;

    #[test]
    fn subgroup_examples() {
        assert_eq!(s_count(Group::B3, T::B3, 3).unwrap(), 7);
        assert_eq!(s_count(Group::B3, T::G1, 4).unwrap(), 1);
        assert_eq!(s_count(Group::B4, T::B4, 2).unwrap(), 0);
        assert_eq!(s_count(Group::Gamma, T::Z2, 4).unwrap(), 3);
        assert!(s_count(Group::B4, T::B3, 2).is_err());
        assert!(s_count(Group::Z3, T::G1, 2).is_err());
    }

    #[test]
    fn class_examples() {
        assert_eq!(c_count(Group::B3, T::B3, 8).unwrap(), 2);
        assert_eq!(c_count(Group::B3, T::G1, 4).unwrap(), 1);
        assert_eq!(c_count(Group::B4, T::B4, 3).unwrap(), 3);
        assert_eq!(c_count(Group::Gamma, T::Klein, 4).unwrap(), 2);
        assert_eq!(C_B3_B3_MINUS_VARIANT.eval(8).unwrap(), 0);
    }

    #[test]
    fn totals() {
        assert_eq!(total_counts(Group::B3, CountKind::Subgroups, 2).unwrap(), 7);
        assert_eq!(total_counts(Group::B3, CountKind::Classes, 2).unwrap(), 7);
        assert_eq!(total_counts(Group::B4, CountKind::Subgroups, 1).unwrap(), 1);
    }

    #[test]
    fn classes_bounded_by_subgroups() {
        for g in [Group::Gamma, Group::B3, Group::B4] {
            for n in 1..=512 {
                for &t in defined_types(g).unwrap() {
                    let s = s_count(g, t, n).unwrap();
                    let c = c_count(g, t, n).unwrap();
                    assert!(c <= s, "{g} {t} n={n}: c={c} s={s}");
                }
            }
        }
    }

    #[test]
    fn parity_vanishing() {
        for n in (2..=128).step_by(2) {
            assert_eq!(s_count(Group::B4, T::B4, n).unwrap(), 0);
        }
        for n in 1..=128 {
            if n % 4 != 0 {
                assert_eq!(s_count(Group::B3, T::G1, n).unwrap(), 0);
            }
        }
    }

    /// The minus-sign variant first disagrees at n = 8; orbits side with
    /// the plus sign.
    #[test]
    fn sign_discrepancy_witness() {
        assert_eq!(C_B3_B3_MINUS_VARIANT.eval(8).unwrap(), 0);
        assert_eq!(c_count(Group::B3, T::B3, 8).unwrap(), 2);
        assert_eq!(crate::conjugacy::count_classes(Group::B3, 8).unwrap()[&T::B3], 2);
        for n in 1..8 {
            assert_eq!(C_B3_B3_MINUS_VARIANT.eval(n).unwrap(), c_count(Group::B3, T::B3, n).unwrap());
        }
    }

    #[test]
    fn indivisible_sum_is_consistency_error() {
        let bad = frac(2, &[(1, Sigma0, 1)]);
        assert!(matches!(bad.eval(4), Err(Error::Consistency(_))));
    }

    #[test]
    fn rendering() {
        let s = formula(Group::B3, T::B3, CountKind::Classes).unwrap().to_string();
        assert_eq!(s, "D3(n) − D3(n/2) − D3(n/4) + D3(n/8)");
        let s = formula(Group::Gamma, T::Z2, CountKind::Classes).unwrap().to_string();
        assert_eq!(s, "(1/2)·(SIGMA1(n/2) + SIGMA0(n/2) + SIGMA0(n/4))");
    }

    #[test]
    fn table_serialization() {
        let t = CountTable::build(Group::Gamma, CountKind::Subgroups, 1..=2, None).unwrap();
        let csv = t.to_csv();
        assert_eq!(
            csv,
            "#schema_version=1\nambient,kind,iso_type,n,value\n\
             GAMMA,SUBGROUPS,Z2,1,0\nGAMMA,SUBGROUPS,KLEIN,1,1\n\
             GAMMA,SUBGROUPS,Z2,2,1\nGAMMA,SUBGROUPS,KLEIN,2,2\n"
        );
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
        assert_eq!(v["rows"][1]["iso_type"], "KLEIN");
    }
}
