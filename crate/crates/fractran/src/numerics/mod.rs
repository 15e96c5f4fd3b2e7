//! Exact arithmetic foundation.
//!
//! Everything in the verification path is built from three value kinds:
//! unbounded non-negative integers ([`Natural`]), exact reduced rationals
//! ([`Rational`]), and elements of ℚ\[√2\] ([`QuadraticRational`]). All are
//! immutable after construction, every operation is a pure function, and
//! there is no floating point anywhere.

mod digits;
mod primes;
mod quadratic;

pub use digits::{pi_digit_reference, pi_enclosure, sqrt2_digit_reference, PiEnclosure};
pub use primes::{factor_u64, is_prime_u64};
pub use quadratic::QuadraticRational;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Unbounded non-negative integer. Closed under `+`, `*` and divmod; can
/// never overflow.
pub type Natural = BigUint;

/// Exact rational number, always stored reduced with a positive
/// denominator. Equality is structural after reduction.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("expected a positive value, got {0}")]
    NotPositive(String),
}

/// Which side of √2 a rational lies on. A rational can never equal √2, so
/// there is no third case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtTwoSide {
    Less,
    Greater,
}

/// Floor of the square root: returns `r` with `r² ≤ v < (r+1)²`.
///
/// Newton's integer iteration seeded from the bit length; the seed is an
/// upper bound for √v, and the iteration decreases strictly until it
/// crosses the root.
pub fn isqrt(v: &Natural) -> Natural {
    if v.is_zero() {
        return Natural::zero();
    }
    // 2^ceil(bits/2) ≥ √v.
    let bits = v.bits();
    let mut x = Natural::one() << ((bits + 1) / 2) as usize;
    loop {
        let next = (&x + v / &x) >> 1usize;
        if next >= x {
            break;
        }
        x = next;
    }
    debug_assert!(&x * &x <= *v && (&x + 1u32) * (&x + 1u32) > *v);
    x
}

/// True iff `v` is a perfect square.
pub fn is_perfect_square(v: &Natural) -> bool {
    let r = isqrt(v);
    &r * &r == *v
}

/// Exact comparison of a positive rational against √2.
///
/// `x > √2 ⇔ x² > 2 ⇔ num² > 2·den²`, an integer comparison. Equality is
/// impossible for a rational (it would make √2 rational), and is asserted
/// away rather than returned.
pub fn compare_to_sqrt2(x: &Rational) -> Result<SqrtTwoSide, NumericsError> {
    if !x.is_positive() {
        return Err(NumericsError::NotPositive(x.to_string()));
    }
    let num2 = x.numer() * x.numer();
    let den2_twice: BigInt = x.denom() * x.denom() * 2;
    assert_ne!(num2, den2_twice, "rational square equal to 2: {x}");
    if num2 > den2_twice {
        Ok(SqrtTwoSide::Greater)
    } else {
        Ok(SqrtTwoSide::Less)
    }
}

/// `10^n` as a [`Natural`].
pub fn pow10(n: u32) -> Natural {
    Natural::from(10u32).pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;

    fn nat(v: u128) -> Natural {
        Natural::from_u128(v).unwrap()
    }

    #[test]
    fn isqrt_small_cases() {
        assert_eq!(isqrt(&nat(0)), nat(0));
        assert_eq!(isqrt(&nat(1)), nat(1));
        assert_eq!(isqrt(&nat(2)), nat(1));
        assert_eq!(isqrt(&nat(144)), nat(12));
        // 141² = 19881 ≤ 20000 < 20164 = 142²
        assert_eq!(isqrt(&nat(20_000)), nat(141));
    }

    #[test]
    fn isqrt_matches_num_integer() {
        // Independent route: num-integer's Roots implementation.
        for v in (0u128..5_000).chain([u64::MAX as u128, 1 << 100, (1 << 100) - 1]) {
            let n = nat(v);
            assert_eq!(isqrt(&n), n.sqrt(), "v = {v}");
        }
    }

    #[test]
    fn compare_to_sqrt2_cases() {
        let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(compare_to_sqrt2(&r(3, 2)), Ok(SqrtTwoSide::Greater));
        assert_eq!(compare_to_sqrt2(&r(7, 5)), Ok(SqrtTwoSide::Less));
        // 1440² = 2073600 > 2·945² = 1786050
        assert_eq!(compare_to_sqrt2(&r(1440, 945)), Ok(SqrtTwoSide::Greater));
        assert!(compare_to_sqrt2(&r(-1, 2)).is_err());
        assert!(compare_to_sqrt2(&r(0, 1)).is_err());
    }

    #[test]
    fn rational_reduction_is_idempotent() {
        let r = Rational::new(BigInt::from(1440), BigInt::from(945));
        assert_eq!(r.numer(), &BigInt::from(32));
        assert_eq!(r.denom(), &BigInt::from(21));
        let again = Rational::new(r.numer().clone(), r.denom().clone());
        assert_eq!(r, again);
    }

    proptest! {
        #[test]
        fn isqrt_postcondition(hi in 0u128..u128::MAX, lo in 0u128..u128::MAX) {
            // Two u128 halves give values up to ~10^76 > 10^40.
            let v = (nat(hi) << 128) + nat(lo);
            let r = isqrt(&v);
            prop_assert!(&r * &r <= v);
            prop_assert!((&r + 1u32) * (&r + 1u32) > v);
            prop_assert_eq!(&r, &v.sqrt());
        }
    }
}
