//! Divisor-sum arithmetic functions.
//!
//! Every counting formula in this crate is a signed combination of six
//! functions, each a sum over *ordered* factorizations of its argument into
//! two or three positive factors:
//!
//! | function | definition |
//! |----------|------------|
//! | σ₀(n) | Σ_{ab=n} 1 |
//! | σ₁(n) | Σ_{ab=n} a |
//! | σ₂(n) | Σ_{abc=n} a |
//! | d₃(n) | Σ_{abc=n} 1 |
//! | χ(n)  | Σ_{abc=n} ab |
//! | ω(n)  | Σ_{abc=n} a²b |
//!
//! Formulas evaluate these at arguments like n/2 or n/8. A [`ScaledArg`]
//! carries such a fraction, and every function evaluates to zero when the
//! fraction is not an integer.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{domain, CheckedI64, Error, Result};

/// Largest argument accepted by [`divisors`].
pub const MAX_DIVISOR_ARG: u64 = 1 << 40;

/// The six divisor-sum functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithFn {
    Sigma0,
    Sigma1,
    Sigma2,
    D3,
    Chi,
    Omega,
}

impl ArithFn {
    pub const ALL: [ArithFn; 6] =
        [ArithFn::Sigma0, ArithFn::Sigma1, ArithFn::Sigma2, ArithFn::D3, ArithFn::Chi, ArithFn::Omega];

    pub fn label(self) -> &'static str {
        match self {
            ArithFn::Sigma0 => "SIGMA0",
            ArithFn::Sigma1 => "SIGMA1",
            ArithFn::Sigma2 => "SIGMA2",
            ArithFn::D3 => "D3",
            ArithFn::Chi => "CHI",
            ArithFn::Omega => "OMEGA",
        }
    }

    /// `f(n)` for a positive integer `n`.
    pub fn of(self, n: u64) -> Result<u64> {
        eval(self, ScaledArg::new(n, 1)?)
    }

    /// `f(n / den)`, zero when `den` does not divide `n`.
    pub fn scaled(self, n: u64, den: u64) -> Result<u64> {
        eval(self, ScaledArg::new(n, den)?)
    }
}

impl fmt::Display for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A fractional argument `numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledArg {
    numerator: u64,
    denominator: u64,
}

impl ScaledArg {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if numerator == 0 || denominator == 0 {
            return domain(format!("scaled argument {numerator}/{denominator} must have positive parts"));
        }
        Ok(ScaledArg { numerator, denominator })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// The integer value, if the fraction is integral.
    pub fn integral(&self) -> Option<u64> {
        self.numerator.is_multiple_of(self.denominator).then(|| self.numerator / self.denominator)
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_DIVISOR_ARG {
        return domain(format!("divisors: argument {n} outside 1..=2^40"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

type Cache = RwLock<HashMap<(ArithFn, u64), u64>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Evaluate `f` at a scaled argument.
pub fn eval(f: ArithFn, q: ScaledArg) -> Result<u64> {
    let Some(n) = q.integral() else {
        return Ok(0);
    };
    if let Some(&v) = cache().read().expect("arith cache poisoned").get(&(f, n)) {
        return Ok(v);
    }
    let v = direct(f, n)?;
    cache().write().expect("arith cache poisoned").insert((f, n), v);
    Ok(v)
}

fn to_u64(v: i64) -> u64 {
    // Sums of positive terms only.
    v as u64
}

/// Direct summation over ordered factorizations, no caching.
fn direct(f: ArithFn, n: u64) -> Result<u64> {
    const CTX: &str = "divisor sum";
    let divs = divisors(n)?;
    let mut acc: i64 = 0;
    match f {
        ArithFn::Sigma0 => acc = divs.len() as i64,
        ArithFn::Sigma1 => {
            for &a in &divs {
                acc = acc.add_or(a as i64, CTX)?;
            }
        }
        _ => {
            for &a in &divs {
                let rest = n / a;
                for &b in divs.iter().filter(|&&b| rest.is_multiple_of(b)) {
                    let (a, b) = (a as i64, b as i64);
                    let term = match f {
                        ArithFn::Sigma2 => a,
                        ArithFn::D3 => 1,
                        ArithFn::Chi => a.mul_or(b, CTX)?,
                        ArithFn::Omega => a.mul_or(a, CTX)?.mul_or(b, CTX)?,
                        ArithFn::Sigma0 | ArithFn::Sigma1 => unreachable!(),
                    };
                    acc = acc.add_or(term, CTX)?;
                }
            }
        }
    }
    if acc < 0 {
        return Err(Error::Overflow(CTX));
    }
    Ok(to_u64(acc))
}
