//! Independent reference digit generators.
//!
//! Digit indexing convention, used uniformly across the crate: digit 0 is
//! the integer part, digit n (n ≥ 1) is the n-th decimal place, so the
//! extractor is always `⌊10ⁿ·x⌋ mod 10`.
//!
//! The √2 reference comes from integer square roots; the π reference from
//! a fixed-point Machin-formula evaluation with explicit error bounds.
//! Both are computed, never transcribed, so they are independent of any
//! table and of every other digit route in the crate.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{isqrt, pow10, Natural, Rational};

/// Digit `n` of √2: `⌊√(2·10^(2n))⌋ mod 10`.
///
/// A trailing-zeros ambiguity would require `2·10^(2n)` to be a perfect
/// square, which is impossible (its factor 2 has odd exponent 2n+1); the
/// guard is asserted anyway.
pub fn sqrt2_digit_reference(n: u32) -> u8 {
    let scaled = Natural::from(2u32) * pow10(2 * n);
    let root = isqrt(&scaled);
    assert!(
        &root * &root != scaled,
        "2·10^(2·{n}) cannot be a perfect square"
    );
    (&root % 10u32).to_u8().unwrap()
}

/// A certified rational enclosure `lo < π < hi`.
#[derive(Debug, Clone)]
pub struct PiEnclosure {
    lo: Rational,
    hi: Rational,
}

impl PiEnclosure {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Scaled arctangent: returns `(sum, error_bound)` with
/// `|sum − scale·arctan(1/x)| ≤ error_bound`.
///
/// Each retained term is floored twice (once per division), losing less
/// than 3 per term for x ≥ 5; the alternating tail after the last nonzero
/// term is below 2. Those bounds are summed into the returned error.
fn atan_inv_scaled(scale: &Natural, x: u32) -> (BigInt, BigInt) {
    let x2 = Natural::from(x) * Natural::from(x);
    // w_k ≈ scale / x^(2k+1), maintained by repeated division by x².
    let mut w = scale / Natural::from(x);
    let mut k = 0u64;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    while !w.is_zero() {
        let term = BigInt::from(&w / Natural::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
        w /= &x2;
        k += 1;
    }
    let err = BigInt::from(3 * terms + 2);
    (sum, err)
}

/// Certified enclosure of π with width at most `10^−decimal_digits`.
///
/// Machin's formula `π = 16·arctan(1/5) − 4·arctan(1/239)`, evaluated in
/// fixed point with ten guard digits. The guard is ample: the accumulated
/// error is a few thousand units at most, against a 10¹⁰ margin.
pub fn pi_enclosure(decimal_digits: u32) -> PiEnclosure {
    let guard = 10u32;
    let scale_nat = pow10(decimal_digits + guard);
    let (a5, e5) = atan_inv_scaled(&scale_nat, 5);
    let (a239, e239) = atan_inv_scaled(&scale_nat, 239);
    let sum = 16 * a5 - 4 * a239;
    let err = 16 * e5 + 4 * e239;
    let scale = BigInt::from(scale_nat);
    assert!(
        2 * &err < pow10(guard).into(),
        "guard digits insufficient for requested precision"
    );
    let enc = PiEnclosure {
        lo: Rational::new(&sum - &err, scale.clone()),
        hi: Rational::new(&sum + &err, scale),
    };
    debug_assert!(enc.width() <= Rational::new(BigInt::from(1), pow10(decimal_digits).into()));
    enc
}

/// Digit `n` of π via the Machin enclosure.
///
/// The digit is accepted only when the whole enclosure agrees on
/// `⌊10ⁿ·π⌋`; if it does not, precision is raised and the computation
/// retried. The result is additionally recomputed at double precision and
/// the two answers asserted identical.
pub fn pi_digit_reference(n: u32) -> u8 {
    let first = pi_floor_shifted(n, n + 10);
    let second = pi_floor_shifted(n, 2 * (n + 10));
    assert_eq!(
        first, second,
        "π digit {n} unstable under precision doubling"
    );
    (&first % 10u32).to_u8().unwrap().min(9)
}

/// `⌊10ⁿ·π⌋`, certified by an enclosure of `digits` decimal digits
/// (raised automatically if the floor is not yet pinned down).
fn pi_floor_shifted(n: u32, digits: u32) -> BigInt {
    let mut digits = digits.max(n + 2);
    loop {
        let enc = pi_enclosure(digits);
        let shift = Rational::from_integer(pow10(n).into());
        let lo = (enc.lo() * &shift).floor();
        let hi = (enc.hi() * &shift).floor();
        if lo == hi {
            let f = lo.to_integer();
            assert!(!f.is_negative());
            return f;
        }
        digits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn sqrt2_reference_prefix() {
        // √2 = 1.41421356237309504880168872420969807856967187537694…
        let expect = [1u8, 4, 1, 4, 2, 1, 3, 5, 6, 2, 3, 7, 3, 0, 9, 5, 0, 4, 8, 8];
        for (n, &d) in expect.iter().enumerate() {
            assert_eq!(sqrt2_digit_reference(n as u32), d, "digit {n}");
        }
    }

    #[test]
    fn sqrt2_reference_examples() {
        assert_eq!(sqrt2_digit_reference(0), 1); // isqrt(2) = 1
        assert_eq!(sqrt2_digit_reference(1), 4); // isqrt(200) = 14
        assert_eq!(sqrt2_digit_reference(5), 1); // isqrt(2·10^10) = 141421
    }

    #[test]
    fn pi_reference_prefix() {
        // π = 3.14159265358979323846264338327950288419716939937510…
        let expect = [3u8, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4];
        for (n, &d) in expect.iter().enumerate() {
            assert_eq!(pi_digit_reference(n as u32), d, "digit {n}");
        }
    }

    #[test]
    fn pi_digit_deeper_sample() {
        // Digits 40–44 of π are 1, 6, 9, 3, 9.
        assert_eq!(pi_digit_reference(40), 1);
        assert_eq!(pi_digit_reference(41), 6);
        assert_eq!(pi_digit_reference(42), 9);
        assert_eq!(pi_digit_reference(43), 3);
        assert_eq!(pi_digit_reference(44), 9);
    }

    #[test]
    fn enclosure_brackets_known_bounds() {
        let enc = pi_enclosure(60);
        let lo_known = Rational::new(314159265.into(), 100000000.into());
        let hi_known = Rational::new(314159266.into(), 100000000.into());
        assert!(enc.lo() > &lo_known);
        assert!(enc.hi() < &hi_known);
        assert!(enc.width() <= Rational::new(BigInt::one(), pow10(60).into()));
    }

    #[test]
    fn digit_generators_stable_under_larger_guards() {
        for n in [0u32, 7, 23, 40] {
            assert_eq!(
                pi_floor_shifted(n, n + 10),
                pi_floor_shifted(n, 3 * (n + 15))
            );
            // √2 route: recompute with extra scaling and compare.
            let bigger = Natural::from(2u32) * pow10(2 * n + 20);
            let shifted = isqrt(&bigger) / pow10(10);
            let direct = isqrt(&(Natural::from(2u32) * pow10(2 * n)));
            assert_eq!(shifted, direct, "√2 floor at n = {n}");
        }
    }
}
