//! Finite-index subgroups as normal-form matrices.
//!
//! An index-`n` subgroup is identified by six integers `(a,b,c,d,e,f)` with
//! `abc = n`. It is generated by
//!
//! ```text
//! X = x^a,   Y = x^d y^b,   Z = x^f y^e z^c
//! ```
//!
//! where `a` is the least positive power of `x` in the subgroup, `b` the
//! least positive `y`-exponent among its elements without `z`, and `c` the
//! least positive `z`-exponent. Ranges: `0 ≤ d, f < a`; for `Z3`,
//! `0 ≤ e < b`; for `B3`/`B4`, `e` is even in `[0, 2b)` when `b` is odd and
//! lies in `[0, b)` when `b` is even. The non-abelian ambients add the
//! congruences
//!
//! * (iv) `b` even, `e` odd: `2d ≡ 0 (mod a)`;
//! * (v) `b` odd, `c` even: `2f ≡ 0 (mod a)`;
//! * (vi) `b`, `c` odd: `2f ≡ 2d (mod a)` in `B3`, `d − f ≡ (a+1)/2 (mod a)`
//!   with `a` odd in `B4`.
//!
//! Rank-two ambients (`Z2`, `Gamma`) use only `(a, b, d)`; the matrix is
//! stored with `c = 1`, `e = f = 0` so one type covers every ambient.

mod lattice;
mod normalize;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{consistency, domain, Result};
use crate::words::{Group, Word};

pub use lattice::{half_count_direct, half_count_kernel, involution_type, is_invariant, Involution, LatticeMap};
pub use normalize::normalize_subgroup;

/// Largest index accepted by [`enumerate_matrices`] for `Z2`, `Z3`, `Gamma`.
pub const MAX_INDEX_ABELIAN: u64 = 10_000;
/// Largest index accepted by [`enumerate_matrices`] for `B3`, `B4`.
pub const MAX_INDEX_BIEBERBACH: u64 = 512;

/// The parameter block of one subgroup. Field order is the sort key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl SubgroupMatrix {
    pub const IDENTITY: SubgroupMatrix = SubgroupMatrix { a: 1, b: 1, c: 1, d: 0, e: 0, f: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        SubgroupMatrix { a, b, c, d, e, f }
    }

    /// A rank-two block `(a, b, d)`.
    pub fn rank2(a: i64, b: i64, d: i64) -> Self {
        SubgroupMatrix { a, b, c: 1, d, e: 0, f: 0 }
    }

    /// `abc`, which is the index once the matrix is valid.
    pub fn index(&self) -> u64 {
        (self.a * self.b * self.c) as u64
    }
}

impl fmt::Display for SubgroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

fn even(v: i64) -> bool {
    v & 1 == 0
}

/// Check every range and congruence constraint for `g`.
pub fn validate(g: Group, m: &SubgroupMatrix) -> Result<()> {
    let SubgroupMatrix { a, b, c, d, e, f } = *m;
    let bad = |why: &str| domain(format!("matrix {m} invalid for {g}: {why}"));
    if a < 1 || b < 1 || c < 1 {
        return bad("a, b, c must be positive");
    }
    if a.checked_mul(b).and_then(|ab| ab.checked_mul(c)).is_none() {
        return bad("index overflows");
    }
    if !(0..a).contains(&d) || !(0..a).contains(&f) {
        return bad("need 0 <= d, f < a");
    }
    match g {
        Group::Z2 | Group::Gamma => {
            if c != 1 || e != 0 || f != 0 {
                return bad("rank-two blocks have c = 1, e = f = 0");
            }
        }
        Group::Z3 => {
            if !(0..b).contains(&e) {
                return bad("need 0 <= e < b");
            }
        }
        Group::B3 | Group::B4 => {
            if even(b) {
                if !(0..b).contains(&e) {
                    return bad("b even needs 0 <= e < b");
                }
                if !even(e) && (2 * d) % a != 0 {
                    return bad("b even, e odd needs 2d = 0 mod a");
                }
            } else {
                if !even(e) || !(0..2 * b).contains(&e) {
                    return bad("b odd needs e even in [0, 2b)");
                }
                if even(c) {
                    if (2 * f) % a != 0 {
                        return bad("b odd, c even needs 2f = 0 mod a");
                    }
                } else if g == Group::B3 {
                    if (2 * (f - d)).rem_euclid(a) != 0 {
                        return bad("b, c odd needs 2f = 2d mod a");
                    }
                } else if (2 * (d - f) - 1).rem_euclid(a) != 0 {
                    return bad("b, c odd needs 2(d - f) = 1 mod a");
                }
            }
        }
    }
    Ok(())
}

fn index_bound(g: Group) -> u64 {
    match g {
        Group::Z2 | Group::Z3 | Group::Gamma => MAX_INDEX_ABELIAN,
        Group::B3 | Group::B4 => MAX_INDEX_BIEBERBACH,
    }
}

pub(crate) fn check_index(g: Group, n: u64) -> Result<()> {
    if n == 0 || n > index_bound(g) {
        return domain(format!("index {n} outside 1..={} for {g}", index_bound(g)));
    }
    Ok(())
}

/// Every index-`n` subgroup of `g`, one matrix each, sorted.
pub fn enumerate_matrices(g: Group, n: u64) -> Result<Vec<SubgroupMatrix>> {
    check_index(g, n)?;
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let rest = n / a;
        for b in 1..=rest {
            if rest % b != 0 {
                continue;
            }
            let c = rest / b;
            match g {
                Group::Z2 | Group::Gamma => {
                    if c == 1 {
                        out.extend((0..a).map(|d| SubgroupMatrix::rank2(a, b, d)));
                    }
                }
                Group::Z3 => {
                    for d in 0..a {
                        for e in 0..b {
                            for f in 0..a {
                                out.push(SubgroupMatrix { a, b, c, d, e, f });
                            }
                        }
                    }
                }
                Group::B3 | Group::B4 => push_bieberbach(g, a, b, c, &mut out),
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Solve the congruences directly instead of filtering the full box.
fn push_bieberbach(g: Group, a: i64, b: i64, c: i64, out: &mut Vec<SubgroupMatrix>) {
    let halves = |a: i64| -> Vec<i64> {
        if even(a) {
            vec![0, a / 2]
        } else {
            vec![0]
        }
    };
    let es: Vec<i64> = if even(b) { (0..b).collect() } else { (0..2 * b).step_by(2).collect() };
    for e in es {
        let ds: Vec<i64> = if even(b) && !even(e) { halves(a) } else { (0..a).collect() };
        for d in ds {
            let fs: Vec<i64> = if even(b) {
                (0..a).collect()
            } else if even(c) {
                halves(a)
            } else if g == Group::B3 {
                let mut v: Vec<i64> = halves(a).into_iter().map(|h| (d + h) % a).collect();
                v.sort_unstable();
                v
            } else if even(a) {
                Vec::new()
            } else {
                vec![(d - (a + 1) / 2).rem_euclid(a)]
            };
            out.extend(fs.into_iter().map(|f| SubgroupMatrix { a, b, c, d, e, f }));
        }
    }
}

/// `[X, Y]` in rank two, `[X, Y, Z]` in rank three.
pub fn generators_of(g: Group, m: &SubgroupMatrix) -> Result<Vec<Word>> {
    validate(g, m)?;
    Ok(raw_generators(g, m))
}

fn raw_generators(g: Group, m: &SubgroupMatrix) -> Vec<Word> {
    // Exponents are in range by validation; `Word::new` cannot fail on rank.
    let mut gens =
        vec![Word::new(g, m.a, 0, 0).expect("rank checked"), Word::new(g, m.d, m.b, 0).expect("rank checked")];
    if g.rank() == 3 {
        gens.push(Word::new(g, m.f, m.e, m.c).expect("rank checked"));
    }
    gens
}

/// Membership: peel `z`, then `y`, then require a multiple of `x^a`.
pub fn contains(g: Group, m: &SubgroupMatrix, w: &Word) -> Result<bool> {
    validate(g, m)?;
    if w.group() != g {
        return domain(format!("word of {} tested against {g}", w.group()));
    }
    Ok(decompose(g, m, w)?.is_some())
}

/// Exponents `(k, t, u)` with `w = X^k Y^t Z^u`, if `w` is in the subgroup.
pub(crate) fn decompose(g: Group, m: &SubgroupMatrix, w: &Word) -> Result<Option<(i64, i64, i64)>> {
    let gens = raw_generators(g, m);
    let mut rest = *w;
    let mut u = 0;
    if g.rank() == 3 {
        if rest.c() % m.c != 0 {
            return Ok(None);
        }
        u = rest.c() / m.c;
        rest = rest.multiply(&gens[2].pow_unbounded(-u)?)?;
    }
    if rest.b() % m.b != 0 {
        return Ok(None);
    }
    let t = rest.b() / m.b;
    rest = rest.multiply(&gens[1].pow_unbounded(-t)?)?;
    debug_assert_eq!((rest.b(), rest.c()), (0, 0));
    if rest.a() % m.a != 0 {
        return Ok(None);
    }
    Ok(Some((rest.a() / m.a, t, u)))
}

/// The grid element `x^i y^j z^k` (`i<a`, `j<b`, `k<c`) in the right coset
/// `H·w`.
pub fn coset_representative(g: Group, m: &SubgroupMatrix, w: &Word) -> Result<Word> {
    validate(g, m)?;
    let gens = raw_generators(g, m);
    let mut w = *w;
    if g.rank() == 3 {
        let k = w.c().div_euclid(m.c);
        w = gens[2].pow_unbounded(-k)?.multiply(&w)?;
    }
    let k = w.b().div_euclid(m.b);
    w = gens[1].pow_unbounded(-k)?.multiply(&w)?;
    let k = w.a().div_euclid(m.a);
    gens[0].pow_unbounded(-k)?.multiply(&w)
}

/// One representative per right coset, found by breadth-first search from
/// the identity under right multiplication by the ambient generators and
/// their inverses. Sorted by exponent triple.
pub fn coset_transversal(g: Group, m: &SubgroupMatrix) -> Result<Vec<Word>> {
    validate(g, m)?;
    let n = m.index();
    check_index(g, n)?;
    let mut steps = Vec::new();
    for s in g.generators() {
        steps.push(s.inverse()?);
        steps.push(s);
    }
    let start = g.identity();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for s in &steps {
            let next = coset_representative(g, m, &r.multiply(s)?)?;
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if seen.len() as u64 != n {
        return consistency(format!("transversal of {m} in {g} has {} cosets, expected {n}", seen.len()));
    }
    Ok(seen.into_iter().collect())
}

/// A matrix tagged with its ambient group, as serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub ambient: Group,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl MatrixRecord {
    pub fn new(ambient: Group, m: &SubgroupMatrix) -> Self {
        let SubgroupMatrix { a, b, c, d, e, f } = *m;
        MatrixRecord { ambient, a, b, c, d, e, f }
    }

    pub fn matrix(&self) -> SubgroupMatrix {
        SubgroupMatrix::new(self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

/// CSV column order for [`MatrixRecord`].
pub const MATRIX_CSV_HEADER: [&str; 7] = ["ambient", "a", "b", "c", "d", "e", "f"];
