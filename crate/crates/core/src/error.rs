use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// `Domain` means the caller asked for something outside an operation's
/// contract. `Overflow` means an exact 64-bit computation would have wrapped.
/// `Consistency` means an internal invariant broke, which always indicates a
/// bug (or a transcription error in a formula table) rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}

pub(crate) trait CheckedI64: Sized {
    fn add_or(self, rhs: Self, ctx: &'static str) -> Result<Self>;
    fn sub_or(self, rhs: Self, ctx: &'static str) -> Result<Self>;
    fn mul_or(self, rhs: Self, ctx: &'static str) -> Result<Self>;
}

impl CheckedI64 for i64 {
    #[inline]
    fn add_or(self, rhs: i64, ctx: &'static str) -> Result<i64> {
        self.checked_add(rhs).ok_or(Error::Overflow(ctx))
    }
    #[inline]
    fn sub_or(self, rhs: i64, ctx: &'static str) -> Result<i64> {
        self.checked_sub(rhs).ok_or(Error::Overflow(ctx))
    }
    #[inline]
    fn mul_or(self, rhs: i64, ctx: &'static str) -> Result<i64> {
        self.checked_mul(rhs).ok_or(Error::Overflow(ctx))
    }
}
