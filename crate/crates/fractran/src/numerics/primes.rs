//! Small-prime utilities: trial-division primality and factorization for
//! `u64` values. Program components and node primes are small (well under
//! 2³², typically under 10⁹), so trial division is entirely adequate.

/// Deterministic primality by trial division.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // 6k±1 wheel.
    let mut d = 7u64;
    let mut step = 4u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += step;
        step = 6 - step;
    }
    true
}

/// Prime factorization of a positive `u64`, as sorted `(prime, exponent)`
/// pairs. `factor_u64(1)` is the empty factorization.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    push(5, &mut n);
    let mut d = 7u64;
    let mut step = 4u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        d += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(424_375 / 625 / 7)); // 97
        assert!(!is_prime_u64(227_123_851)); // 239 · 97² · 101
    }

    #[test]
    fn factor_roundtrip() {
        for n in 1u64..3_000 {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
        assert_eq!(factor_u64(227_123_851), vec![(97, 2), (101, 1), (239, 1)]);
        assert_eq!(factor_u64(575), vec![(5, 2), (23, 1)]);
    }
}
