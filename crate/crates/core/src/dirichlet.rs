//! Truncated Dirichlet series with integer coefficients.
//!
//! A series `Σ f(n) n^{-s}` is stored as its first `N` coefficients.
//! Products of series are Dirichlet convolutions, and the factor `2^{-s}`
//! moves coefficient `n` to `2n` ([`dilate2`]). Every generating function in
//! the tables below is a polynomial in `D = 2^{-s}` times a product of
//! `ζ(s)`, `ζ(s−1)`, `ζ(s−2)`, so it expands to integer operations only.

use std::fmt::Write as _;

use crate::classify::IsoType;
use crate::error::{consistency, domain, CheckedI64, Result};
use crate::formulas::CountKind;
use crate::words::Group;

/// Largest truncation length accepted by [`zeta_shift`].
pub const MAX_LEN: usize = 10_000;

/// Coefficients `f(1), …, f(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSeries {
    coeffs: Vec<i64>,
}

const CTX: &str = "series arithmetic";

impl CoeffSeries {
    pub fn zero(len: usize) -> Self {
        CoeffSeries { coeffs: vec![0; len] }
    }

    /// The convolution unit: 1 at `n = 1`, 0 elsewhere.
    pub fn delta1(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.coeffs[0] = 1;
        }
        s
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(u64) -> i64) -> Self {
        CoeffSeries { coeffs: (1..=len as u64).map(&mut f).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `f(n)` for `1 ≤ n ≤ N`.
    pub fn coeff(&self, n: usize) -> i64 {
        assert!(n >= 1 && n <= self.len(), "coefficient {n} outside 1..={}", self.len());
        self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// A JSON array of the coefficients.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeffs).expect("integer arrays serialize")
    }

    /// OEIS b-file text: one `n value` pair per line.
    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.coeffs.iter().enumerate() {
            writeln!(out, "{} {v}", i + 1).expect("writing to a String");
        }
        out
    }
}

fn same_len(f: &CoeffSeries, g: &CoeffSeries) -> Result<()> {
    if f.len() != g.len() {
        return domain(format!("series lengths differ: {} vs {}", f.len(), g.len()));
    }
    Ok(())
}

/// `ζ(s − k)`, whose coefficients are `n^k`.
pub fn zeta_shift(k: u32, len: usize) -> Result<CoeffSeries> {
    if k > 2 || len > MAX_LEN {
        return domain(format!("zeta_shift needs k <= 2 and N <= {MAX_LEN}"));
    }
    let coeffs =
        (1..=len as i64).map(|n| n.checked_pow(k).ok_or(crate::error::Error::Overflow(CTX))).collect::<Result<_>>()?;
    Ok(CoeffSeries { coeffs })
}

/// Dirichlet convolution `(f ∗ g)(n) = Σ_{k | n} f(k) g(n/k)`, truncated.
pub fn convolve(f: &CoeffSeries, g: &CoeffSeries) -> Result<CoeffSeries> {
    same_len(f, g)?;
    let n = f.len();
    let mut out = vec![0i64; n];
    for i in 1..=n {
        let fi = f.coeffs[i - 1];
        if fi == 0 {
            continue;
        }
        for j in 1..=n / i {
            let t = fi.mul_or(g.coeffs[j - 1], CTX)?;
            out[i * j - 1] = out[i * j - 1].add_or(t, CTX)?;
        }
    }
    Ok(CoeffSeries { coeffs: out })
}

/// Multiplication by `2^{-s}`: coefficient `n` becomes `f(n/2)`, zero for
/// odd `n`.
pub fn dilate2(f: &CoeffSeries) -> CoeffSeries {
    CoeffSeries::from_fn(f.len(), |n| if n % 2 == 0 { f.coeffs[n as usize / 2 - 1] } else { 0 })
}

/// `Σ k_i f_i`. An empty list gives the zero series of length `len`.
pub fn linear_combine(len: usize, terms: &[(i64, &CoeffSeries)]) -> Result<CoeffSeries> {
    let mut out = CoeffSeries::zero(len);
    for &(k, f) in terms {
        same_len(&out, f)?;
        for (o, &v) in out.coeffs.iter_mut().zip(&f.coeffs) {
            *o = o.add_or(k.mul_or(v, CTX)?, CTX)?;
        }
    }
    Ok(out)
}

/// `f / d`, failing if any coefficient is not divisible.
pub fn exact_div(f: &CoeffSeries, d: i64) -> Result<CoeffSeries> {
    if d == 0 {
        return domain("division by zero");
    }
    let mut coeffs = Vec::with_capacity(f.len());
    for (i, &v) in f.coeffs.iter().enumerate() {
        if v % d != 0 {
            return consistency(format!("coefficient {v} at n={} is not divisible by {d}", i + 1));
        }
        coeffs.push(v / d);
    }
    Ok(CoeffSeries { coeffs })
}

/// A polynomial in `D = 2^{-s}` applied to `f`; `poly[i]` is the
/// coefficient of `D^i`.
pub fn apply_poly(poly: &[i64], f: &CoeffSeries) -> Result<CoeffSeries> {
    let mut shifted = f.clone();
    let mut powers = Vec::with_capacity(poly.len());
    for _ in poly {
        powers.push(shifted.clone());
        shifted = dilate2(&shifted);
    }
    let terms: Vec<(i64, &CoeffSeries)> = poly.iter().copied().zip(powers.iter()).collect();
    linear_combine(f.len(), &terms)
}

fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `ζ(s)^k0 ζ(s−1)^k1 ζ(s−2)^k2`.
pub fn zeta_product(powers: [u32; 3], len: usize) -> Result<CoeffSeries> {
    let mut acc = CoeffSeries::delta1(len);
    for (shift, &k) in powers.iter().enumerate() {
        let z = zeta_shift(shift as u32, len)?;
        for _ in 0..k {
            acc = convolve(&acc, &z)?;
        }
    }
    Ok(acc)
}

/// `scalar · Π factors(D) · ζ-product`.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub scalar: i64,
    pub factors: &'static [&'static [i64]],
    pub zeta: [u32; 3],
}

/// `(1/denominator) · Σ terms`.
#[derive(Debug, Clone)]
pub struct Expr {
    pub denominator: i64,
    pub terms: Vec<Term>,
}

const fn t(scalar: i64, factors: &'static [&'static [i64]], zeta: [u32; 3]) -> Term {
    Term { scalar, factors, zeta }
}

impl Expr {
    pub fn expand(&self, len: usize) -> Result<CoeffSeries> {
        let mut parts = Vec::new();
        for term in &self.terms {
            let poly = term.factors.iter().fold(vec![term.scalar], |p, q| poly_mul(&p, q));
            parts.push(apply_poly(&poly, &zeta_product(term.zeta, len)?)?);
        }
        let refs: Vec<(i64, &CoeffSeries)> = parts.iter().map(|p| (1, p)).collect();
        exact_div(&linear_combine(len, &refs)?, self.denominator)
    }
}

// Factor shorthands, as coefficient lists in D = 2^{-s}.
const D: &[i64] = &[0, 1]; // 2^{-s}
const D2: &[i64] = &[0, 0, 1]; // 4^{-s}
const ONE_MINUS_D: &[i64] = &[1, -1]; // (1 − 2^{-s})
const ONE_PLUS_D: &[i64] = &[1, 1]; // (1 + 2^{-s})
const ONE_MINUS_2D: &[i64] = &[1, -2]; // (1 − 2^{-s+1})
const ONE_PLUS_3D: &[i64] = &[1, 3]; // (1 + 3·2^{-s})

const Z1Z2: [u32; 3] = [1, 1, 0]; // ζ(s)ζ(s−1)
const Z2: [u32; 3] = [2, 0, 0]; // ζ²(s)
const Z3: [u32; 3] = [3, 0, 0]; // ζ³(s)
const Z2Z1: [u32; 3] = [2, 1, 0]; // ζ²(s)ζ(s−1)
const ZZ1Z1: [u32; 3] = [1, 2, 0]; // ζ(s)ζ(s−1)²
const ZZ1Z2: [u32; 3] = [1, 1, 1]; // ζ(s)ζ(s−1)ζ(s−2)

/// The generating function of `(ambient, type, kind)` as tabulated.
pub fn table_expr(ambient: Group, ty: IsoType, kind: CountKind) -> Result<Expr> {
    use CountKind::{Classes as C, Subgroups as S};
    use IsoType as T;
    let e = |denominator, terms: &[Term]| Ok(Expr { denominator, terms: terms.to_vec() });
    match (ambient, kind, ty) {
        // 2^{-s} ζ(s)ζ(s−1)
        (Group::Gamma, S, T::Z2) => e(1, &[t(1, &[D], Z1Z2)]),
        // 2^{-s-1} ζ(s) (ζ(s−1) + (1+2^{-s}) ζ(s))
        (Group::Gamma, C, T::Z2) => e(2, &[t(1, &[D], Z1Z2), t(1, &[D, ONE_PLUS_D], Z2)]),
        // (1−2^{-s}) ζ(s)ζ(s−1)
        (Group::Gamma, S, T::Klein) => e(1, &[t(1, &[ONE_MINUS_D], Z1Z2)]),
        // (1−2^{-s})(1+2^{-s}) ζ²(s)
        (Group::Gamma, C, T::Klein) => e(1, &[t(1, &[ONE_MINUS_D, ONE_PLUS_D], Z2)]),

        // 4^{-s} ζ(s)ζ(s−1)ζ(s−2)
        (Group::B3 | Group::B4, S, T::G1) => e(1, &[t(1, &[D2], ZZ1Z2)]),
        // 2^{-s}(1−2^{-s}) ζ(s)ζ(s−1)ζ(s−2)
        (Group::B3 | Group::B4, S, T::G2) => e(1, &[t(1, &[D, ONE_MINUS_D], ZZ1Z2)]),
        // 2^{-s+1}(1−2^{-s}) ζ(s)ζ(s−1)²
        (Group::B3 | Group::B4, S, T::B1) => e(1, &[t(2, &[D, ONE_MINUS_D], ZZ1Z1)]),
        // 4^{-s+1}(1−2^{-s}) ζ(s)ζ(s−1)²
        (Group::B3 | Group::B4, S, T::B2) => e(1, &[t(4, &[D2, ONE_MINUS_D], ZZ1Z1)]),
        // (1−2^{-s})(1−2^{-s+1}) ζ(s)ζ(s−1)²
        (Group::B3, S, T::B3) => e(1, &[t(1, &[ONE_MINUS_D, ONE_MINUS_2D], ZZ1Z1)]),
        // 2^{-s+1}(1−2^{-s})(1−2^{-s+1}) ζ(s)ζ(s−1)²
        (Group::B3, S, T::B4) => e(1, &[t(2, &[D, ONE_MINUS_D, ONE_MINUS_2D], ZZ1Z1)]),
        // (1−2^{-s})(1−2^{-s+1})² ζ(s)ζ(s−1)²
        (Group::B4, S, T::B4) => e(1, &[t(1, &[ONE_MINUS_D, ONE_MINUS_2D, ONE_MINUS_2D], ZZ1Z1)]),

        // 4^{-s-1} ζ(s)ζ(s−1) (ζ(s−2) + 3(1+3·2^{-s}) ζ(s))
        (Group::B3 | Group::B4, C, T::G1) => e(4, &[t(1, &[D2], ZZ1Z2), t(3, &[D2, ONE_PLUS_3D], Z2Z1)]),
        // 2^{-s-1}(1−2^{-s}) ζ²(s) ((1+3·2^{-s}) ζ(s−1) + (1+2^{-s}+2^{-2s-1}) ζ(s)),
        // over the common denominator 4.
        (Group::B3, C, T::G2) => {
            e(4, &[t(2, &[D, ONE_MINUS_D, ONE_PLUS_3D], Z2Z1), t(1, &[D, ONE_MINUS_D, &[2, 2, 1]], Z3)])
        }
        // As above with (1+2^{-s}−2^{-2s-1}).
        (Group::B4, C, T::G2) => {
            e(4, &[t(2, &[D, ONE_MINUS_D, ONE_PLUS_3D], Z2Z1), t(1, &[D, ONE_MINUS_D, &[2, 2, -1]], Z3)])
        }
        // 2^{-s}(1−2^{-s})(1+2^{-s}) ζ²(s) (ζ(s−1) + ζ(s))
        (Group::B3, C, T::B1) => {
            e(1, &[t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z2Z1), t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z3)])
        }
        // 2^{-s}(1−2^{-s}) ζ²(s) ((1+2^{-s}) ζ(s−1) + (1−2^{-s}) ζ(s))
        (Group::B4, C, T::B1) => {
            e(1, &[t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z2Z1), t(1, &[D, ONE_MINUS_D, ONE_MINUS_D], Z3)])
        }
        // 4^{-s}(1−2^{-s}) ζ²(s) (2ζ(s−1) + (1+2^{-s}) ζ(s))
        (Group::B3, C, T::B2) => e(1, &[t(2, &[D2, ONE_MINUS_D], Z2Z1), t(1, &[D2, ONE_MINUS_D, ONE_PLUS_D], Z3)]),
        // 4^{-s}(1−2^{-s}) ζ²(s) (2ζ(s−1) + (1−2^{-s}) ζ(s))
        (Group::B4, C, T::B2) => e(1, &[t(2, &[D2, ONE_MINUS_D], Z2Z1), t(1, &[D2, ONE_MINUS_D, ONE_MINUS_D], Z3)]),
        // (1−2^{-s})²(1+2^{-s}) ζ(s)³
        (Group::B3, C, T::B3) => e(1, &[t(1, &[ONE_MINUS_D, ONE_MINUS_D, ONE_PLUS_D], Z3)]),
        // 2^{-s+1}(1−2^{-s})² ζ(s)³
        (Group::B3, C, T::B4) => e(1, &[t(2, &[D, ONE_MINUS_D, ONE_MINUS_D], Z3)]),
        // (1−2^{-s})³ ζ³(s)
        (Group::B4, C, T::B4) => e(1, &[t(1, &[ONE_MINUS_D, ONE_MINUS_D, ONE_MINUS_D], Z3)]),

        _ => domain(format!("no tabulated {kind} series for type {ty} in {ambient}")),
    }
}

/// The second, expanded form given for some class-count rows.
pub fn alternative_expr(ambient: Group, ty: IsoType) -> Option<Expr> {
    use IsoType as T;
    let e = |terms: &[Term]| Some(Expr { denominator: 1, terms: terms.to_vec() });
    match (ambient, ty) {
        // 2^{-s}(1−2^{-s})(1+2^{-s}) ζ²ζ(s−1) + 2^{-s}(1−2^{-s})(1+2^{-s}) ζ³
        (Group::B3, T::B1) => e(&[t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z2Z1), t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z3)]),
        // 2^{-s}(1−2^{-s})(1+2^{-s}) ζ²ζ(s−1) + 2^{-s}(1−2^{-s})² ζ³
        (Group::B4, T::B1) => e(&[t(1, &[D, ONE_MINUS_D, ONE_PLUS_D], Z2Z1), t(1, &[D, ONE_MINUS_D, ONE_MINUS_D], Z3)]),
        // 2·4^{-s}(1−2^{-s}) ζ²(s)ζ(s−1) + (1+2^{-s}) 4^{-s}(1−2^{-s}) ζ³(s)
        (Group::B3, T::B2) => e(&[t(2, &[D2, ONE_MINUS_D], Z2Z1), t(1, &[ONE_PLUS_D, D2, ONE_MINUS_D], Z3)]),
        // 2·4^{-s}(1−2^{-s}) ζ²(s)ζ(s−1) + 4^{-s}(1−2^{-s})² ζ³(s)
        (Group::B4, T::B2) => e(&[t(2, &[D2, ONE_MINUS_D], Z2Z1), t(1, &[D2, ONE_MINUS_D, ONE_MINUS_D], Z3)]),
        _ => None,
    }
}

/// The tabulated generating function, expanded to `len` coefficients.
pub fn table_series(ambient: Group, ty: IsoType, kind: CountKind, len: usize) -> Result<CoeffSeries> {
    table_expr(ambient, ty, kind)?.expand(len)
}

/// Every tabulated `(ambient, type, kind)` row.
pub fn table_rows() -> Vec<(Group, IsoType, CountKind)> {
    let mut rows = Vec::new();
    for g in [Group::Gamma, Group::B3, Group::B4] {
        for kind in [CountKind::Subgroups, CountKind::Classes] {
            for &ty in IsoType::types_of(g) {
                rows.push((g, ty, kind));
            }
        }
    }
    rows
}
