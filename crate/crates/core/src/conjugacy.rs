//! Conjugacy classes of subgroups by exact orbit computation.
//!
//! Conjugation follows `u^v = v u v⁻¹` throughout. The generic path
//! conjugates each generator word and renormalizes; the parameter tables
//! in [`action_table`] are closed-form shortcuts checked against it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{enumerate_matrices, generators_of, normalize_subgroup, validate, MatrixRecord, SubgroupMatrix};
use crate::classify::{classify, iso_type, IsoType};
use crate::error::{consistency, domain, Error, Result};
use crate::words::{Group, Word};

/// Largest index accepted by [`count_classes`] and [`orbits`].
pub fn class_budget(g: Group) -> u64 {
    match g {
        Group::B3 | Group::B4 | Group::Z3 => 48,
        Group::Gamma | Group::Z2 => 512,
    }
}

/// The matrix of `w Δ w⁻¹`.
pub fn conjugate_subgroup(g: Group, m: &SubgroupMatrix, w: &Word) -> Result<SubgroupMatrix> {
    let gens = generators_of(g, m)?.iter().map(|u| u.conjugate(w)).collect::<Result<Vec<_>>>()?;
    normalize_subgroup(g, &gens, m.index())
}

/// A conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted; the first entry is the representative.
    pub members: Vec<SubgroupMatrix>,
    pub iso_type: IsoType,
}

impl Orbit {
    pub fn representative(&self) -> &SubgroupMatrix {
        &self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn record(&self, g: Group) -> OrbitRecord {
        OrbitRecord {
            representative: MatrixRecord::new(g, self.representative()),
            size: self.size(),
            iso_type: self.iso_type,
        }
    }
}

/// Serialized form of an [`Orbit`].
#[derive(Debug, Clone, Serialize)]
pub struct OrbitRecord {
    pub representative: MatrixRecord,
    pub size: usize,
    pub iso_type: IsoType,
}

fn steps(g: Group) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for s in g.generators() {
        out.push(s);
        out.push(s.inverse()?);
    }
    Ok(out)
}

/// The conjugacy class of `m`, by breadth-first closure.
pub fn orbit_of(g: Group, m: &SubgroupMatrix) -> Result<Orbit> {
    validate(g, m)?;
    let steps = steps(g)?;
    let mut seen = BTreeSet::from([*m]);
    let mut queue = VecDeque::from([*m]);
    while let Some(cur) = queue.pop_front() {
        for s in &steps {
            let next = conjugate_subgroup(g, &cur, s)?;
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(Orbit { members: seen.into_iter().collect(), iso_type: iso_type(g, m)? })
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// All conjugacy classes of index-`n` subgroups, ordered by representative.
///
/// Generator images are computed in parallel; the union-find merge always
/// keeps the smaller index as root, so the result is schedule-independent.
pub fn orbits(g: Group, n: u64) -> Result<Vec<Orbit>> {
    if n == 0 || n > class_budget(g) {
        return domain(format!("class count for {g} needs 1 <= n <= {}", class_budget(g)));
    }
    let all = enumerate_matrices(g, n)?;
    let gens = g.generators();
    let images: Vec<Vec<usize>> = all
        .par_iter()
        .map(|m| {
            gens.iter()
                .map(|s| {
                    let img = conjugate_subgroup(g, m, s)?;
                    all.binary_search(&img)
                        .map_err(|_| Error::Consistency(format!("conjugate {img} of {m} is not enumerated")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..all.len()).collect();
    for (i, imgs) in images.iter().enumerate() {
        for &j in imgs {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                let (lo, hi) = (ri.min(rj), ri.max(rj));
                parent[hi] = lo;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<SubgroupMatrix>> = BTreeMap::new();
    for (i, &m) in all.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(m);
    }
    groups
        .into_values()
        .map(|members| {
            let t = iso_type(g, &members[0])?;
            for m in &members[1..] {
                if iso_type(g, m)? != t {
                    return consistency(format!("orbit of {} mixes isomorphism types", members[0]));
                }
            }
            Ok(Orbit { members, iso_type: t })
        })
        .collect()
}

/// Number of conjugacy classes per isomorphism type. Every type that occurs
/// in `g` is present, with zero where no class exists.
pub fn count_classes(g: Group, n: u64) -> Result<BTreeMap<IsoType, u64>> {
    let mut out: BTreeMap<IsoType, u64> = IsoType::types_of(g).iter().map(|&t| (t, 0)).collect();
    for o in orbits(g, n)? {
        *out.entry(o.iso_type).or_default() += 1;
    }
    Ok(out)
}

/// An ambient generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::X, Generator::Y, Generator::Z];

    pub fn word(self, g: Group) -> Result<Word> {
        match self {
            Generator::X => Ok(g.x()),
            Generator::Y => Ok(g.y()),
            Generator::Z => g.z().ok_or_else(|| Error::Domain(format!("{g} has no generator z"))),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Generator> {
        match s {
            "x" | "X" => Ok(Generator::X),
            "y" | "Y" => Ok(Generator::Y),
            "z" | "Z" => Ok(Generator::Z),
            _ => domain(format!("unknown generator '{s}'")),
        }
    }
}

/// A matrix parameter touched by a conjugation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    D,
    E,
    F,
}

impl Param {
    fn name(self) -> char {
        match self {
            Param::D => 'd',
            Param::E => 'e',
            Param::F => 'f',
        }
    }
}

/// `p ↦ sign·p + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamMap {
    pub param: Param,
    pub sign: i64,
    pub shift: i64,
}

impl fmt::Display for ParamMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.param.name();
        let head = if self.sign < 0 { format!("−{p}") } else { p.to_string() };
        match self.shift {
            0 => write!(f, "{head}"),
            s if s > 0 => write!(f, "{head}+{s}"),
            s => write!(f, "{head}−{}", -s),
        }
    }
}

/// How conjugation by one generator moves the free parameters of a matrix.
///
/// Parameters not listed are fixed, except that in the `b, c` odd cases `f`
/// is determined by `d` and is recomputed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamAction {
    pub maps: Vec<ParamMap>,
}

impl ParamAction {
    fn new(maps: &[(Param, i64, i64)]) -> Self {
        ParamAction { maps: maps.iter().map(|&(param, sign, shift)| ParamMap { param, sign, shift }).collect() }
    }

    /// Apply the raw maps, then reduce into the canonical ranges.
    pub fn apply(&self, g: Group, m: &SubgroupMatrix) -> Result<SubgroupMatrix> {
        let case = classify(g, m)?.case;
        let mut out = *m;
        for pm in &self.maps {
            let slot = match pm.param {
                Param::D => &mut out.d,
                Param::E => &mut out.e,
                Param::F => &mut out.f,
            };
            *slot = pm.sign * *slot + pm.shift;
        }
        out.d = out.d.rem_euclid(out.a);
        if g.rank() == 3 {
            if out.b % 2 != 0 {
                // Y² = y^{2b}: no x-part to carry.
                out.e = out.e.rem_euclid(2 * out.b);
            } else {
                // Y^{-k}·Z moves e by −kb and f by −kd.
                let k = out.e.div_euclid(out.b);
                out.e -= k * out.b;
                out.f -= k * out.d;
            }
        }
        out.f = out.f.rem_euclid(out.a);
        let half = out.a / 2;
        out.f = match (g, case) {
            (Group::B3, Some(7)) => out.d,
            (Group::B3, Some(8)) => (out.d + half) % out.a,
            (Group::B4, Some(7)) => (out.d - (out.a + 1) / 2).rem_euclid(out.a),
            _ => out.f,
        };
        validate(g, &out)?;
        Ok(out)
    }
}

impl fmt::Display for ParamAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.maps.is_empty() {
            return f.write_str("identity");
        }
        let names: Vec<String> = self.maps.iter().map(|m| m.param.name().to_string()).collect();
        let images: Vec<String> = self.maps.iter().map(|m| m.to_string()).collect();
        write!(f, "({}) ↦ ({})", names.join(","), images.join(","))
    }
}

/// The closed-form action of `Ad_gen` on `m`'s parameters, or `None` when
/// no table covers `m`'s case (the free abelian types inside `B3`/`B4`).
pub fn action_table(g: Group, m: &SubgroupMatrix, gen: Generator) -> Result<Option<ParamAction>> {
    use Param::{D, E, F};
    gen.word(g)?;
    let case = classify(g, m)?.case;
    let c_odd = m.c % 2 != 0;
    let table: &[(Param, i64, i64)] = match (g, case, gen) {
        (Group::Z2 | Group::Z3, _, _) => &[],
        (Group::Gamma, _, Generator::X) if m.b % 2 == 0 => &[],
        (Group::Gamma, _, Generator::X) => &[(D, 1, 2)],
        (Group::Gamma, _, _) => &[(D, -1, 0)],

        (_, Some(1 | 2), _) => return Ok(None),

        (Group::B3, Some(3 | 4), Generator::X) if c_odd => &[(E, 1, 0), (F, 1, 0)],
        (Group::B3, Some(3 | 4), Generator::Y) if c_odd => &[(E, 1, 2), (F, -1, 0)],
        (Group::B3, Some(3 | 4), Generator::X) => &[(E, 1, 0), (F, 1, 2)],
        (Group::B3, Some(3 | 4), Generator::Y) => &[(E, 1, 0), (F, -1, 0)],
        (Group::B3, Some(3 | 4), Generator::Z) => &[(E, -1, 0), (F, -1, 0)],
        (Group::B3, Some(5 | 6), Generator::X) => &[(D, 1, 2), (E, 1, 0)],
        (Group::B3, Some(5 | 6), Generator::Y) => &[(D, -1, 0), (E, 1, 0)],
        (Group::B3, Some(5 | 6), Generator::Z) => &[(D, -1, 0), (E, -1, 0)],
        (Group::B3, Some(7 | 8), Generator::X) => &[(D, 1, 2), (E, 1, 0)],
        (Group::B3, Some(7 | 8), Generator::Y) => &[(D, -1, 0), (E, 1, 2)],
        (Group::B3, Some(7 | 8), Generator::Z) => &[(D, -1, 0), (E, -1, 0)],

        (Group::B4, Some(3 | 4), Generator::X) if c_odd => &[(E, 1, 0), (F, 1, 0)],
        (Group::B4, Some(3 | 4), Generator::Y) if c_odd => &[(E, 1, 2), (F, -1, 1)],
        (Group::B4, Some(3 | 4), Generator::X) => &[(E, 1, 0), (F, 1, 2)],
        (Group::B4, Some(3 | 4), Generator::Y) => &[(E, 1, 0), (F, -1, 0)],
        (Group::B4, Some(3 | 4), Generator::Z) => &[(E, -1, 0), (F, -1, 1)],
        (Group::B4, Some(5..=7), Generator::X) => &[(D, 1, 2), (E, 1, 0)],
        (Group::B4, Some(5 | 6), Generator::Y) => &[(D, -1, 0), (E, 1, 0)],
        (Group::B4, Some(7), Generator::Y) => &[(D, -1, 0), (E, 1, 2)],
        (Group::B4, Some(5..=7), Generator::Z) => &[(D, -1, 1), (E, -1, 0)],

        _ => return consistency(format!("no action table entry for {g} {m} {gen:?}")),
    };
    Ok(Some(ParamAction::new(table)))
}
