//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Everything that only needs field arithmetic (resolvent solves, y-vectors,
//! state evaluation, the truncated oracle) is generic over [`Scalar`], which
//! covers `f32`, `f64` and exact rationals such as [`num_rational::BigRational`].
//! Routines that iterate to convergence (spectral radius, Perron vectors) need
//! [`RealScalar`], i.e. an IEEE float.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar: exact or floating point.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Embeds an edge or path count.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("path counts are representable in every scalar type")
    }

    /// Embeds a tolerance given in `f64`. Exact types get the exact binary
    /// value of the float.
    fn from_tol(tol: f64) -> Self {
        Self::from_f64(tol).expect("tolerances are finite")
    }

    /// Lossy view used for reporting and for comparing against `f64` spectral data.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self^n` by repeated squaring.
    fn powi_exact(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Floating-point scalar for iterative spectral routines.
pub trait RealScalar: Scalar + Float {}

impl<T: Scalar + Float> RealScalar for T {}

/// Largest absolute entry of a slice; zero for an empty slice.
pub fn max_abs<T: Scalar>(values: &[T]) -> T {
    values
        .iter()
        .map(|v| v.abs())
        .fold(T::zero(), |acc, v| if v > acc { v } else { acc })
}

/// Neumaier-compensated running sum. Long float sums of path weights
/// otherwise lose about `n·u`, which is comparable to the tail masses being
/// certified. For exact scalars the compensation stays zero.
#[derive(Debug, Clone)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new(start: T) -> Self {
        Self {
            sum: start,
            compensation: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum.clone() + x.clone();
        let lost = if self.sum.abs() >= x.abs() {
            (self.sum.clone() - t.clone()) + x
        } else {
            (x - t.clone()) + self.sum.clone()
        };
        self.compensation = self.compensation.clone() + lost;
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.compensation.clone()
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    let mut acc = CompensatedSum::new(T::zero());
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Tolerances used throughout the crate, in `f64`.
pub mod tol {
    /// Eigen-residual bound `‖Ax − ρx‖_∞` for Perron vectors.
    pub const EIGEN_RESIDUAL: f64 = 1e-10;
    /// Band for classifying a numerically computed spectral radius.
    pub const CLASSIFICATION_BAND: f64 = 1e-8;
    /// `q·ρ(A)` must stay below `1 − ADMISSIBILITY_MARGIN`.
    pub const ADMISSIBILITY_MARGIN: f64 = 1e-9;
    /// Entries of ε at or below this count as zero when testing factoring through `C*(E)`.
    pub const CK_ZERO: f64 = 1e-9;
    /// Stopping rule for successive power-iteration eigenvalue estimates.
    pub const POWER_STEP: f64 = 1e-13;
    /// Power-iteration budget.
    pub const MAX_POWER_ITERATIONS: usize = 100_000;
    /// Membership tolerance for `ε·y = 1`, `Σm = 1` and similar normalizations.
    pub const NORMALIZATION: f64 = 1e-9;
    /// Subinvariance slack `(m − qAm)_v ≥ −SUBINVARIANCE`.
    pub const SUBINVARIANCE: f64 = 1e-9;
    /// Symbolic identities that hold exactly up to floating-point rounding.
    pub const SYMBOLIC: f64 = 1e-12;
    /// Allowance for rounding in floating-point partial sums of path weights.
    pub const ROUNDING: f64 = 1e-14;
    /// Target tail mass when choosing the oracle truncation depth.
    pub const ORACLE_TAIL: f64 = 1e-8;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn powi_exact_matches_float_pow() {
        assert_eq!(2.0f64.powi_exact(10), 1024.0);
        assert_eq!(0.5f64.powi_exact(0), 1.0);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.powi_exact(3), BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn compensation_recovers_lost_bits() {
        let values = std::iter::once(1.0f64).chain(std::iter::repeat_n(1e-16, 1000));
        let naive: f64 = values.clone().sum();
        assert_eq!(naive, 1.0);
        assert!((compensated_sum(values) - (1.0 + 1e-13)).abs() < 1e-16);
    }

    #[test]
    fn max_abs_of_mixed_signs() {
        assert_eq!(max_abs(&[1.0, -3.0, 2.0]), 3.0);
        assert_eq!(max_abs::<f64>(&[]), 0.0);
    }
}
