//! Exact enumeration of finite-index subgroups of the non-orientable flat
//! 3-manifold groups `B3`, `B4` and of the Klein bottle group.
//!
//! The engine works bottom-up:
//!
//! * [`arith`]: the divisor sums σ₀, σ₁, σ₂, d₃, χ, ω.
//! * [`words`]: canonical forms `x^a y^b z^c` and the group laws.
//! * [`catalog`]: one normal-form matrix per subgroup, membership, coset
//!   transversals, and recovery of the matrix from any generating set.
//! * [`classify`]: the isomorphism type of a subgroup from its matrix.
//! * [`conjugacy`]: conjugacy classes by orbit enumeration.
//! * [`formulas`]: closed-form counts by type.
//! * [`dirichlet`]: the generating functions of those counts.
//!
//! ```
//! use platycosm::{catalog, classify::{iso_type, IsoType}, formulas, words::Group};
//!
//! let index_three = catalog::enumerate_matrices(Group::B3, 3).unwrap();
//! let same_type = index_three
//!     .iter()
//!     .filter(|m| iso_type(Group::B3, m).unwrap() == IsoType::B3)
//!     .count() as u64;
//! assert_eq!(same_type, formulas::s_count(Group::B3, IsoType::B3, 3).unwrap());
//! ```

pub mod arith;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod conjugacy;
pub mod dirichlet;
mod error;
pub mod formulas;
pub mod words;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/conjugacy.md")]
    mod conjugacy {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
