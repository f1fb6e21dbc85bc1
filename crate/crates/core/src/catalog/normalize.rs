//! Recover the matrix of the subgroup generated by an arbitrary word set.
//!
//! Every ambient has the normal series `G ⊵ ⟨x,y⟩ ⊵ ⟨x⟩ ⊵ 1` with infinite
//! cyclic factors, and the leading exponent at each level (`z`, then `y`
//! inside `⟨x,y⟩`, then `x`) is additive there. A subgroup is therefore
//! described by at most one element per level. Generators are sifted into
//! the three slots by Euclid's algorithm on leading exponents, and the
//! slots are closed under mutual conjugation. Once stable, slot `k` has
//! leading exponent `c`, `b`, `a` respectively and the slots generate the
//! subgroup, so the index is `abc`.

use crate::error::{consistency, domain, Result};
use crate::words::{Group, Word};

use super::{validate, SubgroupMatrix};

fn level(w: &Word) -> Option<usize> {
    if w.c() != 0 {
        Some(0)
    } else if w.b() != 0 {
        Some(1)
    } else if w.a() != 0 {
        Some(2)
    } else {
        None
    }
}

fn lead(w: &Word, lvl: usize) -> i64 {
    match lvl {
        0 => w.c(),
        1 => w.b(),
        _ => w.a(),
    }
}

type Slots = [Option<Word>; 3];

/// Sift `w` into the slots. Returns whether any slot changed.
fn insert(slots: &mut Slots, mut w: Word) -> Result<bool> {
    let mut changed = false;
    while let Some(lvl) = level(&w) {
        let Some(s) = slots[lvl] else {
            slots[lvl] = Some(if lead(&w, lvl) < 0 { w.inverse()? } else { w });
            return Ok(true);
        };
        // Keep `s` when its lead already divides, so a slot only changes when
        // its lead strictly drops. That bounds the closure loop.
        if lead(&w, lvl) % lead(&s, lvl) == 0 {
            let q = lead(&w, lvl) / lead(&s, lvl);
            w = s.pow_unbounded(-q)?.multiply(&w)?;
            continue;
        }
        // Euclid on (lead(u), lead(v)); `lead` is additive on this level.
        let (mut u, mut v) = (s, w);
        while lead(&v, lvl) != 0 {
            let q = lead(&u, lvl).div_euclid(lead(&v, lvl));
            let r = u.multiply(&v.pow_unbounded(-q)?)?;
            u = v;
            v = r;
        }
        if lead(&u, lvl) < 0 {
            u = u.inverse()?;
        }
        if u != s {
            slots[lvl] = Some(u);
            changed = true;
        }
        w = v;
    }
    Ok(changed)
}

fn pcs(g: Group, gens: &[Word], n_bound: u64) -> Result<Slots> {
    let mut slots: Slots = [None; 3];
    for w in gens {
        if w.group() != g {
            return domain(format!("generator {w} is not in {g}"));
        }
        insert(&mut slots, *w)?;
    }
    loop {
        bound_check(g, &slots, n_bound)?;
        let current: Vec<(usize, Word)> = slots.iter().enumerate().filter_map(|(i, s)| s.map(|s| (i, s))).collect();
        let mut changed = false;
        for &(i, si) in &current {
            let si_inv = si.inverse()?;
            for &(j, sj) in &current {
                if j <= i {
                    continue;
                }
                changed |= insert(&mut slots, sj.conjugate(&si)?)?;
                changed |= insert(&mut slots, sj.conjugate(&si_inv)?)?;
            }
        }
        if !changed {
            return Ok(slots);
        }
    }
}

/// Fails once the slots alone already certify an index above `n_bound`.
fn bound_check(g: Group, slots: &Slots, n_bound: u64) -> Result<()> {
    let needed = if g.rank() == 3 { 0..3 } else { 1..3 };
    let mut index: u128 = 1;
    for lvl in needed {
        match slots[lvl] {
            Some(s) => index *= lead(&s, lvl) as u128,
            None => return Ok(()),
        }
    }
    if index > n_bound as u128 {
        return domain(format!("subgroup index {index} exceeds bound {n_bound}"));
    }
    Ok(())
}

/// The unique matrix of `⟨gens⟩`.
///
/// Fails with a domain error when the subgroup has infinite index or index
/// above `n_bound`.
pub fn normalize_subgroup(g: Group, gens: &[Word], n_bound: u64) -> Result<SubgroupMatrix> {
    let slots = pcs(g, gens, n_bound)?;
    let (Some(xs), Some(ys)) = (slots[2], slots[1]) else {
        return domain("generated subgroup has infinite index");
    };
    let zs = if g.rank() == 3 {
        match slots[0] {
            Some(z) => Some(z),
            None => return domain("generated subgroup has infinite index"),
        }
    } else {
        None
    };

    let a = xs.a();
    let xa = xs;
    // d mod a: left multiplication by powers of x^a.
    let mut y = ys;
    y = xa.pow_unbounded(-y.a().div_euclid(a))?.multiply(&y)?;
    let (b, d) = (y.b(), y.a());

    let m = match zs {
        None => SubgroupMatrix::rank2(a, b, d),
        Some(mut z) => {
            let c = z.c();
            match g {
                Group::Z3 => {
                    z = y.pow_unbounded(-z.b().div_euclid(b))?.multiply(&z)?;
                }
                _ if b % 2 == 0 => {
                    z = y.pow_unbounded(-z.b().div_euclid(b))?.multiply(&z)?;
                }
                _ => {
                    if z.b() % 2 != 0 {
                        z = y.multiply(&z)?;
                    }
                    // Y^2 = y^{2b} when b is odd.
                    let y2 = y.multiply(&y)?;
                    z = y2.pow_unbounded(-z.b().div_euclid(2 * b))?.multiply(&z)?;
                }
            }
            z = xa.pow_unbounded(-z.a().div_euclid(a))?.multiply(&z)?;
            SubgroupMatrix::new(a, b, c, d, z.b(), z.a())
        }
    };
    if let Err(e) = validate(g, &m) {
        return consistency(format!("normalization produced an invalid matrix: {e}"));
    }
    Ok(m)
}
