//! The Newton–Raphson (Heron) iteration for √2 in exact rationals.
//!
//! From `x₁ = 1/1`, each update maps `p/q` to `(p² + 2q²)/(2pq)`. The
//! iterates arrive already reduced (`p` stays odd and coprime to `q`),
//! which also means their sizes *double* every step: `x_k` holds on the
//! order of `2^k` digits. Materializing is therefore only possible for
//! small `k`; [`MAX_EXACT_ITERATE`] caps it explicitly, and the
//! digit/contraction entry points switch to exact bracketing certificates
//! beyond the cap instead of pretending the wall is not there.
//!
//! The workhorse is the one-step error identity
//!
//! ```text
//! (u(x) − √2)·2x = (x − √2)²      where u(x) = (x² + 2)/(2x)
//! ```
//!
//! which holds for *every* nonzero rational `x` (expand both sides:
//! `x² + 2 − 2x√2`). It gives, entirely within ℚ[√2]: the error after an
//! update is positive (so `x_k > √2` for `k ≥ 2`), shrinks quadratically
//! (`ε_{k+1} = ε_k²/(2x_k) ≤ ε_k²/2` once `x_k ≥ 1`), and the iterates
//! decrease monotonically from `k = 2` on. Those three exact facts are
//! what the certificates below are made of.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numerics::{pow10, Natural, QuadraticRational, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("iterate index must be at least 1")]
    ZeroIndex,
    #[error(
        "iterate {k} would hold ~10^{log10_digits} digits; \
         exact materialization is capped at k = {max}"
    )]
    IterateTooLarge {
        k: u64,
        log10_digits: u32,
        max: u64,
    },
}

/// Largest iterate index this crate will materialize exactly (`x_28`
/// holds about 40 million digits; each further step doubles that).
pub const MAX_EXACT_ITERATE: u64 = 28;

/// Digit extraction materializes the defining iterate only up to here
/// (~300k digits); past it the sandwich certificate is both exact and
/// effectively free.
const DIRECT_DIGIT_MAX_K: u64 = 21;

/// An exact iterate `x_k = p/q`, coprime with `p/q ∈ [1, 3/2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonIterate {
    pub k: u64,
    pub p: Natural,
    pub q: Natural,
}

impl NewtonIterate {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone().into(), self.q.clone().into())
    }

    /// The exact error `x_k − √2` as an element of ℚ[√2].
    pub fn error(&self) -> QuadraticRational {
        QuadraticRational::new(self.value(), -Rational::one())
    }
}

/// One update step on a numerator/denominator pair.
pub fn newton_update(p: &Natural, q: &Natural) -> (Natural, Natural) {
    (p * p + 2u32 * q * q, 2u32 * p * q)
}

/// The `k`-th exact iterate (`k = 1` is the initial guess `1/1`).
pub fn newton_iterate(k: u64) -> Result<NewtonIterate, NewtonError> {
    if k == 0 {
        return Err(NewtonError::ZeroIndex);
    }
    if k > MAX_EXACT_ITERATE {
        // Digit count is ~0.3·2^(k−1); report its magnitude only.
        let log10_digits = ((k.min(1 << 10) as f64 - 1.0) * 0.30103).round() as u32;
        return Err(NewtonError::IterateTooLarge {
            k,
            log10_digits,
            max: MAX_EXACT_ITERATE,
        });
    }
    let mut p = Natural::one();
    let mut q = Natural::one();
    for _ in 1..k {
        let (np, nq) = newton_update(&p, &q);
        p = np;
        q = nq;
    }
    debug_assert!(p.gcd(&q).is_one(), "iterates must stay reduced");
    Ok(NewtonIterate { k, p, q })
}

/// Verify the one-step error identity at an arbitrary rational point:
/// `(u(x) − √2)·2x = (x − √2)²` in ℚ[√2].
pub fn heron_identity_holds_for(x: &Rational) -> bool {
    if x.is_zero() {
        return false;
    }
    let two = Rational::from_integer(2.into());
    let updated = (x * x + &two) / (&two * x);
    let sqrt2 = QuadraticRational::sqrt2();
    let lhs = &(&QuadraticRational::from_rational(updated) - &sqrt2)
        * &QuadraticRational::from_rational(&two * x);
    let diff = &QuadraticRational::from_rational(x.clone()) - &sqrt2;
    let rhs = &diff * &diff;
    lhs == rhs
}

/// Outcome of the materialized per-iterate contraction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeronCheck {
    pub k: u64,
    /// `(x_{k+1} − √2)·2x_k = (x_k − √2)²` verified in ℚ[√2].
    pub identity_holds: bool,
    /// `x_k ≥ 1`, the step that turns the identity into `ε_{k+1} ≤ ε_k²/2`.
    pub x_at_least_one: bool,
}

impl HeronCheck {
    pub fn pass(&self) -> bool {
        self.identity_holds && self.x_at_least_one
    }
}

/// Exact contraction check at index `k`: materializes `x_k` and `x_{k+1}`
/// and verifies the error identity plus `x_k ≥ 1`.
pub fn heron_contraction_check(k: u64) -> Result<HeronCheck, NewtonError> {
    let xk = newton_iterate(k)?;
    let xk1 = newton_iterate(k + 1)?;
    let sqrt2 = QuadraticRational::sqrt2();
    let lhs = &(&QuadraticRational::from_rational(xk1.value()) - &sqrt2)
        * &QuadraticRational::from_rational(Rational::from_integer(2.into()) * xk.value());
    let diff = xk.error();
    let rhs = &diff * &diff;
    Ok(HeronCheck {
        k,
        identity_holds: lhs == rhs,
        x_at_least_one: xk.p >= xk.q,
    })
}

/// Contraction certificate for `1 ≤ k ≤ max_k`.
///
/// Up to the materialization cap every index gets the direct
/// [`heron_contraction_check`]. Beyond it, the same two facts are
/// certified by exact induction instead of by exploding integers:
/// the identity holds for every rational (checked at `samples` pseudo-
/// random points on top of the materialized prefix), and `x ≥ 1` is
/// inductive — `x₁ = 1`, and for rational `x > 0` the identity makes
/// `u(x) − √2 = (x − √2)²/(2x)` strictly positive, so all later iterates
/// exceed `√2 > 1`. Together: `ε_{k+1} ≤ ε_k²/2` for the whole range.
#[derive(Debug, Clone)]
pub struct ContractionCertificate {
    pub max_k: u64,
    /// Indices checked by materializing the iterates.
    pub materialized_through: u64,
    pub materialized_all_pass: bool,
    /// Identity verified at pseudo-random rational points.
    pub identity_samples: u32,
    pub identity_all_hold: bool,
    /// `x₂ > 1` exactly (the induction base beyond the trivial `x₁ = 1`).
    pub base_exact: bool,
}

impl ContractionCertificate {
    pub fn certified(&self) -> bool {
        self.materialized_all_pass && self.identity_all_hold && self.base_exact
    }
}

pub fn contraction_certified_range(max_k: u64, materialize_to: u64) -> ContractionCertificate {
    let materialized_through = max_k.min(materialize_to).min(MAX_EXACT_ITERATE - 1);
    let mut materialized_all_pass = true;
    for k in 1..=materialized_through {
        let check = heron_contraction_check(k).expect("within materialization cap");
        materialized_all_pass &= check.pass();
    }
    // Deterministic pseudo-random rational sample of the identity.
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let samples = 500u32;
    let mut identity_all_hold = true;
    for _ in 0..samples {
        let num = (next() % 2_000_000) as i64 - 1_000_000;
        let den = (next() % 999_983) as i64 + 1;
        let x = Rational::new(num.into(), den.into());
        if x.is_zero() {
            continue;
        }
        identity_all_hold &= heron_identity_holds_for(&x);
    }
    let x2 = newton_iterate(2).expect("tiny");
    ContractionCertificate {
        max_k,
        materialized_through,
        materialized_all_pass,
        identity_samples: samples,
        identity_all_hold,
        base_exact: x2.p > x2.q,
    }
}

/// Digit `n` of √2 via the iteration, i.e. the digit of the iterate
/// reached after `2n` updates (`x_{2n+1}`), extracted as
/// `⌊10ⁿ·p/q⌋ mod 10`.
///
/// Small indices are computed directly. Past the materialization cap the
/// digit of `x_{2n+1}` is still exact, through a sandwich: find the first
/// `k ≥ 2` whose floor `F = ⌊10ⁿ·x_k⌋` provably equals `⌊10ⁿ·√2⌋`
/// (`F² ≤ 2·10^(2n) < (F+1)²` — pure integer checks). Iterates decrease
/// monotonically toward √2 from `k = 2`, so every later iterate,
/// `x_{2n+1}` included, shares that floor, hence the digit. The result is
/// asserted against the integer-square-root reference.
pub fn newton_digit(n: u32) -> u8 {
    let target_k = 2 * u64::from(n) + 1;
    let digit = if target_k <= DIRECT_DIGIT_MAX_K {
        let it = newton_iterate(target_k).expect("within cap");
        floor_digit(&it, n)
    } else {
        sandwich_digit(n, target_k)
    };
    assert_eq!(
        digit,
        crate::numerics::sqrt2_digit_reference(n),
        "newton digit {n} disagrees with the isqrt reference"
    );
    digit
}

fn floor_digit(it: &NewtonIterate, n: u32) -> u8 {
    let shifted = pow10(n) * &it.p;
    let floor = shifted / &it.q;
    (floor % Natural::from(10u32)).to_u8().expect("digit")
}

fn sandwich_digit(n: u32, target_k: u64) -> u8 {
    let two_shift = Natural::from(2u32) * pow10(2 * n);
    for k in 2..=MAX_EXACT_ITERATE {
        let it = newton_iterate(k).expect("within cap");
        // Above √2?
        if &it.p * &it.p <= Natural::from(2u32) * &it.q * &it.q {
            continue;
        }
        let f = pow10(n) * &it.p / &it.q;
        // F = ⌊10ⁿ·√2⌋ iff F² ≤ 2·10^(2n) < (F+1)².
        if &f * &f <= two_shift && (&f + 1u32) * (&f + 1u32) > two_shift {
            assert!(k <= target_k, "sandwich index must not pass the target");
            return (f % Natural::from(10u32)).to_u8().expect("digit");
        }
    }
    unreachable!("quadratic convergence certifies a digit long before k = 28")
}

/// One row of the error-chain audit: compares the exact error
/// `ε_N = |x_N − √2|` against the naive closed-form bound `2^(−3N)`.
#[derive(Debug, Clone)]
pub struct EpsilonChainRecord {
    pub n: u64,
    /// `ε_N > 2^(−3N)`, i.e. the closed-form chain fails at this index.
    pub exceeds_closed_form: bool,
    /// Exact cross-multiplied witness `(lhs, rhs)` deciding the
    /// comparison `(x_N − 2^(−3N))² vs 2` (both scaled integer strings).
    pub witness: (String, String),
}

/// Audit the closed-form chain `ε_N < 2^(−3N)` for `N = 1..=max_n`.
///
/// The per-step quadratic contraction is real (see
/// [`heron_contraction_check`]), but this particular closed form is not:
/// it fails at small `N` (for example `ε₂ ≈ 0.0858 > 2⁻⁶` and
/// `ε₃ ≈ 0.00245 > 2⁻⁹`) even though digit agreement — the conclusion it
/// was meant to support — holds with a wide margin.
pub fn epsilon_chain_witnesses(max_n: u64) -> Vec<EpsilonChainRecord> {
    (1..=max_n)
        .map(|n| {
            let it = newton_iterate(n).expect("small index");
            let bound = Rational::new(1.into(), Natural::from(2u32).pow(3 * n as u32).into());
            // ε_N > bound ⇔ |x_N − √2| − bound > 0, decided in ℚ[√2].
            let eps = it.error().abs();
            let diff = &eps - &QuadraticRational::from_rational(bound.clone());
            let exceeds = diff.signum() > 0;
            // Witness: compare (x_N ∓ bound)² with 2 in cross-multiplied
            // integers. x_N > √2 for N ≥ 2; x₁ = 1 < √2.
            let shifted = if it.p > it.q {
                it.value() - &bound
            } else {
                it.value() + &bound
            };
            let lhs = shifted.numer() * shifted.numer();
            let rhs: num_bigint::BigInt = shifted.denom() * shifted.denom() * 2;
            EpsilonChainRecord {
                n,
                exceeds_closed_form: exceeds,
                witness: (lhs.to_string(), rhs.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_iterates() {
        let x = |k: u64| {
            let it = newton_iterate(k).unwrap();
            (it.p.to_string(), it.q.to_string())
        };
        assert_eq!(x(1), ("1".into(), "1".into()));
        assert_eq!(x(2), ("3".into(), "2".into()));
        assert_eq!(x(3), ("17".into(), "12".into()));
        assert_eq!(x(4), ("577".into(), "408".into()));
        assert_eq!(x(5), ("665857".into(), "470832".into()));
    }

    #[test]
    fn iterate_errors() {
        assert_eq!(newton_iterate(0).unwrap_err(), NewtonError::ZeroIndex);
        assert!(matches!(
            newton_iterate(100),
            Err(NewtonError::IterateTooLarge { .. })
        ));
    }

    #[test]
    fn contraction_checks_small_k() {
        for k in [1u64, 2, 5, 10] {
            let c = heron_contraction_check(k).unwrap();
            assert!(c.pass(), "k = {k}");
        }
    }

    #[test]
    fn certificate_for_60() {
        let cert = contraction_certified_range(60, 18);
        assert!(cert.certified());
        assert_eq!(cert.materialized_through, 18);
    }

    #[test]
    fn newton_digits_small() {
        assert_eq!(newton_digit(0), 1);
        assert_eq!(newton_digit(1), 4);
        assert_eq!(newton_digit(2), 1);
        // Digit 11 is the first to take the sandwich route (2n+1 = 23).
        assert_eq!(newton_digit(11), 7);
        assert_eq!(newton_digit(14), 9);
    }

    #[test]
    fn epsilon_chain_fails_exactly_where_expected() {
        let records = epsilon_chain_witnesses(6);
        let exceeding: Vec<u64> = records
            .iter()
            .filter(|r| r.exceeds_closed_form)
            .map(|r| r.n)
            .collect();
        // ε₁ = √2−1 ≈ 0.414 > 1/8, ε₂ ≈ 0.0858 > 1/64, ε₃ ≈ 0.00245 > 1/512;
        // from N = 4 the quadratic contraction has pulled far ahead.
        assert_eq!(exceeding, vec![1, 2, 3]);
    }

    proptest! {
        #[test]
        fn identity_holds_for_random_rationals(num in -10_000i64..10_000, den in 1i64..1_000) {
            prop_assume!(num != 0);
            let x = Rational::new(num.into(), den.into());
            prop_assert!(heron_identity_holds_for(&x));
        }
    }
}
