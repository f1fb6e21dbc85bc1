//! Isomorphism type of a subgroup, read off its matrix.
//!
//! For `B3` the parities of `(b, c, e)` and the residues of `d`, `f`,
//! `f − d` mod `a` select one of eight cases:
//!
//! | case | condition                          | type |
//! |------|------------------------------------|------|
//! | 1    | `b, c, e` even                     | G1   |
//! | 2    | `c` odd; `b, e` even               | G2   |
//! | 3    | `e` odd; `d ≡ 0`                   | B1   |
//! | 4    | `e` odd; `d ≡ a/2`                 | B2   |
//! | 5    | `c, e` even; `b` odd; `f ≡ 0`      | B1   |
//! | 6    | `c, e` even; `b` odd; `f ≡ a/2`    | B2   |
//! | 7    | `b, c` odd; `f − d ≡ 0`            | B3   |
//! | 8    | `b, c` odd; `f − d ≡ a/2`          | B4   |
//!
//! `B4` shares cases 1 to 6; its case 7 (`b, c` odd) is always type B4.
//! A `Gamma` subgroup is `Z2` when `b` is even and a Klein bottle group
//! otherwise; every subgroup of `Z2` or `Z3` is free abelian.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{validate, SubgroupMatrix};
use crate::error::{consistency, domain, Error, Result};
use crate::words::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IsoType {
    G1,
    G2,
    B1,
    B2,
    B3,
    B4,
    Z2,
    #[serde(rename = "KLEIN")]
    Klein,
}

impl IsoType {
    pub const ALL: [IsoType; 8] =
        [IsoType::G1, IsoType::G2, IsoType::B1, IsoType::B2, IsoType::B3, IsoType::B4, IsoType::Z2, IsoType::Klein];

    pub fn label(self) -> &'static str {
        match self {
            IsoType::G1 => "G1",
            IsoType::G2 => "G2",
            IsoType::B1 => "B1",
            IsoType::B2 => "B2",
            IsoType::B3 => "B3",
            IsoType::B4 => "B4",
            IsoType::Z2 => "Z2",
            IsoType::Klein => "KLEIN",
        }
    }

    /// The types that occur as finite-index subgroups of `g`, in table order.
    pub fn types_of(g: Group) -> &'static [IsoType] {
        match g {
            Group::Z2 => &[IsoType::Z2],
            Group::Z3 => &[IsoType::G1],
            Group::Gamma => &[IsoType::Z2, IsoType::Klein],
            Group::B3 => &[IsoType::G1, IsoType::G2, IsoType::B1, IsoType::B2, IsoType::B3, IsoType::B4],
            Group::B4 => &[IsoType::G1, IsoType::G2, IsoType::B1, IsoType::B2, IsoType::B4],
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IsoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<IsoType> {
        IsoType::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
            .map_or_else(|| domain(format!("unknown isomorphism type '{s}'")), Ok)
    }
}

/// A type together with the case of the classification table that produced
/// it. Rank-two and abelian ambients have no case number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub iso_type: IsoType,
    pub case: Option<u8>,
}

fn even(v: i64) -> bool {
    v & 1 == 0
}

/// Residue test `v ≡ a/2 (mod a)`; false for odd `a`.
fn is_half(v: i64, a: i64) -> bool {
    even(a) && v.rem_euclid(a) == a / 2
}

pub fn classify(g: Group, m: &SubgroupMatrix) -> Result<Classification> {
    validate(g, m)?;
    let SubgroupMatrix { a, b, c, d, e, f } = *m;
    let done = |iso_type, case| Ok(Classification { iso_type, case });
    match g {
        Group::Z2 => return done(IsoType::Z2, None),
        Group::Z3 => return done(IsoType::G1, None),
        Group::Gamma => {
            return done(if even(b) { IsoType::Z2 } else { IsoType::Klein }, None);
        }
        Group::B3 | Group::B4 => {}
    }
    let guard = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            consistency(format!("{g} matrix {m}: {what}"))
        }
    };
    if even(b) && even(c) && even(e) {
        return done(IsoType::G1, Some(1));
    }
    if !even(c) && even(b) && even(e) {
        return done(IsoType::G2, Some(2));
    }
    if !even(e) {
        guard(even(b), "e odd forces b even")?;
        if d.rem_euclid(a) == 0 {
            return done(IsoType::B1, Some(3));
        }
        if is_half(d, a) {
            return done(IsoType::B2, Some(4));
        }
        return consistency(format!("{g} matrix {m}: e odd but d is neither 0 nor a/2"));
    }
    if even(c) {
        // b odd, c and e even.
        if f.rem_euclid(a) == 0 {
            return done(IsoType::B1, Some(5));
        }
        if is_half(f, a) {
            return done(IsoType::B2, Some(6));
        }
        return consistency(format!("{g} matrix {m}: f is neither 0 nor a/2"));
    }
    // b and c odd.
    guard(even(e), "b, c odd forces e even")?;
    if g == Group::B4 {
        guard(!even(a), "b, c odd forces a odd")?;
        return done(IsoType::B4, Some(7));
    }
    if (f - d).rem_euclid(a) == 0 {
        return done(IsoType::B3, Some(7));
    }
    if is_half(f - d, a) {
        return done(IsoType::B4, Some(8));
    }
    consistency(format!("{g} matrix {m}: f - d is neither 0 nor a/2"))
}

pub fn iso_type(g: Group, m: &SubgroupMatrix) -> Result<IsoType> {
    Ok(classify(g, m)?.iso_type)
}
