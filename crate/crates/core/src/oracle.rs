//! Series given term by term.

/// A pure, deterministic map from a 0-based series index to the term value.
///
/// Every driver in this crate consumes series through this trait, and closures
/// `Fn(u64) -> T` implement it directly. Implementations must be reentrant;
/// drivers may evaluate the same index more than once across separate calls.
pub trait TermOracle<T> {
    fn term(&self, k: u64) -> T;
}

impl<T, F> TermOracle<T> for F
where
    F: Fn(u64) -> T,
{
    #[inline]
    fn term(&self, k: u64) -> T {
        self(k)
    }
}

/// Multiplies every term of the wrapped series by a constant.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<O, T> {
    pub inner: O,
    pub factor: T,
}

impl<T, O> TermOracle<T> for Scaled<O, T>
where
    T: Copy + std::ops::Mul<Output = T>,
    O: TermOracle<T>,
{
    #[inline]
    fn term(&self, k: u64) -> T {
        self.factor * self.inner.term(k)
    }
}
