//! Sublattices of `Z2` and `Z3` under the involutions `ℓ` and `j`.
//!
//! Coordinates follow the matrix rows: a `Z2` vector `(u, v)` is the word
//! `x^v y^u`, so `X = (0, a)` and `Y = (b, d)`. A `Z3` vector is `(z, y, x)`
//! exponents in that order.

use crate::error::{consistency, domain, Result};
use crate::words::{Group, Word};

use super::{coset_transversal, decompose, generators_of, normalize_subgroup, validate, SubgroupMatrix};

/// Involutions of the free abelian groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeMap {
    /// `ℓ(u, v) = (u, −v)` on `Z2`.
    Ell,
    /// `j(u, v) = (u, u − v)` on `Z2`.
    J,
    /// `ℓ(x, y, z) = (−x, y, z)` on `Z3`, negating the first row coordinate.
    Mirror,
}

impl LatticeMap {
    pub fn ambient(self) -> Group {
        match self {
            LatticeMap::Ell | LatticeMap::J => Group::Z2,
            LatticeMap::Mirror => Group::Z3,
        }
    }

    pub fn apply(self, w: &Word) -> Result<Word> {
        if w.group() != self.ambient() {
            return domain(format!("{self:?} acts on {}, not {}", self.ambient(), w.group()));
        }
        let (x, y, z) = w.exponents();
        let g = w.group();
        match self {
            LatticeMap::Ell => Word::new(g, -x, y, 0),
            LatticeMap::J => Word::new(g, y - x, y, 0),
            LatticeMap::Mirror => Word::new(g, x, y, -z),
        }
    }
}

/// The conjugacy class in `GL2(Z)` of an involution with determinant −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    Ell,
    J,
}

/// Whether `φ(H) ≤ H`.
pub fn is_invariant(map: LatticeMap, m: &SubgroupMatrix) -> Result<bool> {
    let g = map.ambient();
    for w in generators_of(g, m)? {
        if decompose(g, m, &map.apply(&w)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a `Z2` sublattice preserved by `map`, whether the restricted pair
/// `(H, map|H)` is isomorphic to `(Z2, ℓ)` or `(Z2, j)`. `None` when `H` is
/// not preserved.
///
/// The two classes are told apart mod 2: `ℓ = diag(1, −1) ≡ I`, while `j`
/// is not, and reduction mod 2 is a conjugacy invariant.
pub fn involution_type(map: LatticeMap, m: &SubgroupMatrix) -> Result<Option<Involution>> {
    if map.ambient() != Group::Z2 {
        return domain("involution types are defined for Z2 sublattices");
    }
    validate(Group::Z2, m)?;
    if !is_invariant(map, m)? {
        return Ok(None);
    }
    // Columns of the restricted map in the basis (X, Y).
    let mut cols = Vec::new();
    for w in generators_of(Group::Z2, m)? {
        match decompose(Group::Z2, m, &map.apply(&w)?)? {
            Some((k, t, _)) => cols.push((k, t)),
            None => return consistency("invariant lattice lost a generator image"),
        }
    }
    let ((p, q), (r, s)) = (cols[0], cols[1]);
    let identity_mod_2 = p.rem_euclid(2) == 1 && q.rem_euclid(2) == 0 && r.rem_euclid(2) == 0 && s.rem_euclid(2) == 1;
    Ok(Some(if identity_mod_2 { Involution::Ell } else { Involution::J }))
}

/// `|Z2 / ⟨2·Z2, H⟩|`, the kernel size of doubling on `Z2/H`.
pub fn half_count_kernel(m: &SubgroupMatrix) -> Result<u64> {
    let g = Group::Z2;
    let mut gens = generators_of(g, m)?;
    gens.push(Word::new(g, 2, 0, 0)?);
    gens.push(Word::new(g, 0, 2, 0)?);
    Ok(normalize_subgroup(g, &gens, m.index())?.index())
}

/// The number of cosets `ν ∈ Z2/H` with `2ν = 0`, counted directly.
pub fn half_count_direct(m: &SubgroupMatrix) -> Result<u64> {
    let g = Group::Z2;
    let mut count = 0;
    for nu in coset_transversal(g, m)? {
        if decompose(g, m, &nu.multiply(&nu)?)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}
