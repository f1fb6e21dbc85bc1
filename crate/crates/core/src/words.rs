//! Canonical forms and the exact group law.
//!
//! Every element of the groups handled here has a unique normal form
//! `x^a y^b z^c` (or `x^a y^b` in rank two), so elements are stored as
//! exponent triples and multiplied by closed-form rules:
//!
//! * `Z2`, `Z3`: free abelian, exponents add.
//! * `Gamma` (Klein bottle, `yxy⁻¹ = x⁻¹`):
//!   `x^a y^b · x^c y^d = x^{a+(-1)^b c} y^{b+d}`.
//! * `B3` (`yxy⁻¹ = zxz⁻¹ = x⁻¹`, `zyz⁻¹ = y⁻¹`):
//!   `x^a y^b z^c · x^d y^e z^f = x^{a+(-1)^{b+c} d} y^{b+(-1)^c e} z^{c+f}`.
//! * `B4` (`yxy⁻¹ = zxz⁻¹ = x⁻¹`, `zyz⁻¹ = xy⁻¹`): as `B3` on the `y` and
//!   `z` exponents; the `x` exponent picks up an extra `(-1)^b` whenever
//!   both `c` and `e` are odd.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, CheckedI64, Error, Result};

/// Largest |k| accepted by [`Word::power`].
pub const MAX_POWER: i64 = 1 << 20;

/// The ambient groups. `Z2`/`Z3` are the free abelian groups used for the
/// sublattice statements; the other three carry the non-abelian laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "Z3")]
    Z3,
    #[serde(rename = "GAMMA")]
    Gamma,
    #[serde(rename = "B3")]
    B3,
    #[serde(rename = "B4")]
    B4,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::Z2, Group::Z3, Group::Gamma, Group::B3, Group::B4];

    pub fn rank(self) -> usize {
        match self {
            Group::Z2 | Group::Gamma => 2,
            Group::Z3 | Group::B3 | Group::B4 => 3,
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, Group::Z2 | Group::Z3)
    }

    pub fn label(self) -> &'static str {
        match self {
            Group::Z2 => "Z2",
            Group::Z3 => "Z3",
            Group::Gamma => "GAMMA",
            Group::B3 => "B3",
            Group::B4 => "B4",
        }
    }

    pub fn identity(self) -> Word {
        Word { group: self, a: 0, b: 0, c: 0 }
    }

    pub fn x(self) -> Word {
        Word { a: 1, ..self.identity() }
    }

    pub fn y(self) -> Word {
        Word { b: 1, ..self.identity() }
    }

    /// The third generator; `None` in rank two.
    pub fn z(self) -> Option<Word> {
        (self.rank() == 3).then(|| Word { c: 1, ..self.identity() })
    }

    /// The standard generators `x, y[, z]`.
    pub fn generators(self) -> Vec<Word> {
        let mut g = vec![self.x(), self.y()];
        g.extend(self.z());
        g
    }

    /// Build a word from exponents, checking the rank.
    pub fn word(self, a: i64, b: i64, c: i64) -> Result<Word> {
        Word::new(self, a, b, c)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Group> {
        match s.to_ascii_lowercase().as_str() {
            "z2" => Ok(Group::Z2),
            "z3" => Ok(Group::Z3),
            "gamma" | "klein" | "k" => Ok(Group::Gamma),
            "b3" => Ok(Group::B3),
            "b4" => Ok(Group::B4),
            other => domain(format!("unknown group '{other}'")),
        }
    }
}

/// An element `x^a y^b z^c` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    group: Group,
    a: i64,
    b: i64,
    c: i64,
}

#[inline]
fn sign(parity_of: i64) -> i64 {
    if parity_of & 1 == 0 {
        1
    } else {
        -1
    }
}

#[inline]
fn odd(v: i64) -> bool {
    v & 1 != 0
}

const MUL: &str = "word multiplication";

impl Word {
    pub fn new(group: Group, a: i64, b: i64, c: i64) -> Result<Word> {
        if group.rank() == 2 && c != 0 {
            return domain(format!("{group} has no z generator (got z-exponent {c})"));
        }
        Ok(Word { group, a, b, c })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// Exponent of `x`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Exponent of `y`.
    pub fn b(&self) -> i64 {
        self.b
    }

    /// Exponent of `z` (always 0 in rank two).
    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn exponents(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    fn same_group(&self, other: &Word) -> Result<()> {
        if self.group != other.group {
            return domain(format!("cannot combine words of {} and {}", self.group, other.group));
        }
        Ok(())
    }

    /// The canonical form of `self · other`.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.same_group(other)?;
        let (a, b, c) = (self.a, self.b, self.c);
        let (d, e, f) = (other.a, other.b, other.c);
        let (na, nb) = match self.group {
            Group::Z2 | Group::Z3 => (a.add_or(d, MUL)?, b.add_or(e, MUL)?),
            Group::Gamma => (a.add_or(sign(b) * d, MUL)?, b.add_or(e, MUL)?),
            Group::B3 => (a.add_or(sign(b + c) * d, MUL)?, b.add_or(sign(c) * e, MUL)?),
            Group::B4 => {
                // Keyed on the parities of (b, c, e).
                let x = match (odd(b), odd(c), odd(e)) {
                    (false, false, _) => a.add_or(d, MUL)?,
                    (true, false, _) => a.sub_or(d, MUL)?,
                    (false, true, false) => a.sub_or(d, MUL)?,
                    (false, true, true) => a.sub_or(d, MUL)?.add_or(1, MUL)?,
                    (true, true, false) => a.add_or(d, MUL)?,
                    (true, true, true) => a.add_or(d, MUL)?.sub_or(1, MUL)?,
                };
                (x, b.add_or(sign(c) * e, MUL)?)
            }
        };
        Ok(Word { group: self.group, a: na, b: nb, c: c.add_or(f, MUL)? })
    }

    pub fn inverse(&self) -> Result<Word> {
        const CTX: &str = "word inverse";
        let (a, b, c) = (self.a, self.b, self.c);
        let neg = |v: i64| v.checked_neg().ok_or(Error::Overflow(CTX));
        let (na, nb) = match self.group {
            Group::Z2 | Group::Z3 => (neg(a)?, neg(b)?),
            Group::Gamma => (neg(sign(b) * a)?, neg(b)?),
            Group::B3 => (neg(sign(b + c) * a)?, neg(sign(c) * b)?),
            Group::B4 => {
                let corr = if odd(b) && odd(c) { -1 } else { 0 };
                (neg(sign(b + c) * a.add_or(corr, CTX)?)?, neg(sign(c) * b)?)
            }
        };
        Ok(Word { group: self.group, a: na, b: nb, c: neg(c)? })
    }

    /// `self^k` for |k| ≤ 2^20.
    pub fn power(&self, k: i64) -> Result<Word> {
        if k.unsigned_abs() > MAX_POWER as u64 {
            return domain(format!("power exponent {k} exceeds 2^20"));
        }
        self.pow_unbounded(k)
    }

    /// Square-and-multiply with no bound on `k` beyond overflow checking.
    pub(crate) fn pow_unbounded(&self, k: i64) -> Result<Word> {
        let mut base = if k < 0 { self.inverse()? } else { *self };
        let mut k = k.unsigned_abs();
        let mut acc = self.group.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// `v · self · v⁻¹`, written `self^v`.
    pub fn conjugate(&self, v: &Word) -> Result<Word> {
        v.multiply(self)?.multiply(&v.inverse()?)
    }

    /// `self · v · self⁻¹ · v⁻¹`.
    pub fn commutator(&self, v: &Word) -> Result<Word> {
        self.multiply(v)?.multiply(&self.inverse()?)?.multiply(&v.inverse()?)
    }

    /// The quotient map `x^a y^b z^c ↦ y^b z^c` onto the Klein bottle group,
    /// with `y, z` becoming the `x, y` of `Gamma`.
    pub fn project_to_klein(&self) -> Result<Word> {
        match self.group {
            Group::B3 | Group::B4 => Ok(Word { group: Group::Gamma, a: self.b, b: self.c, c: 0 }),
            g => domain(format!("projection to GAMMA is defined on B3/B4, not {g}")),
        }
    }

    /// Parse a product of generator powers such as `x^2 y^-1 z`, `x*y`, or
    /// `1`. Factors may come in any order; the result is their product.
    pub fn parse(group: Group, s: &str) -> Result<Word> {
        let mut acc = group.identity();
        let cleaned: String = s.chars().map(|ch| if ch == '*' || ch == '·' { ' ' } else { ch }).collect();
        let mut rest = cleaned.trim();
        if rest.is_empty() || rest == "1" || rest == "e" {
            return Ok(acc);
        }
        while !rest.is_empty() {
            let mut chars = rest.chars();
            let gen = chars.next().unwrap();
            let base = match gen {
                'x' => group.x(),
                'y' => group.y(),
                'z' => match group.z() {
                    Some(z) => z,
                    None => return domain(format!("{group} has no generator z")),
                },
                other => return domain(format!("unexpected character '{other}' in word '{s}'")),
            };
            rest = chars.as_str().trim_start();
            let mut exp = 1i64;
            if let Some(after) = rest.strip_prefix('^') {
                let after = after.trim_start();
                let len = after
                    .char_indices()
                    .take_while(|&(i, ch)| ch.is_ascii_digit() || (i == 0 && (ch == '-' || ch == '+')))
                    .count();
                let (num, tail) = after.split_at(len);
                exp = num.parse().map_err(|_| Error::Domain(format!("bad exponent '{num}' in word '{s}'")))?;
                rest = tail.trim_start();
            }
            acc = acc.multiply(&base.pow_unbounded(exp)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, e) in [('x', self.a), ('y', self.b), ('z', self.c)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}
