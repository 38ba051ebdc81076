//! Exact big-integer helpers shared across the crate: centered residues,
//! deterministic rounding, modular arithmetic on machine words, and
//! Miller-Rabin primality testing.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Maps a canonical residue `x` in `[0, q)` into the centered interval
/// `(-q/2, q/2]`. For odd `q` this is the symmetric open interval
/// `(-q/2, q/2)`.
pub fn centered(x: &BigUint, q: &BigUint) -> BigInt {
    let twice = x << 1u32;
    if &twice > q {
        BigInt::from(x.clone()) - BigInt::from(q.clone())
    } else {
        BigInt::from(x.clone())
    }
}

/// Canonicalizes a signed integer into `[0, q)`.
pub fn canonical(x: &BigInt, q: &BigUint) -> BigUint {
    let q_int = BigInt::from(q.clone());
    let r = x.mod_floor(&q_int);
    r.to_biguint().expect("mod_floor yields a nonnegative residue")
}

/// Nearest integer to `num / den` with ties broken towards the even
/// candidate. `den` must be positive.
pub fn round_div_ties_even(num: &BigInt, den: &BigUint) -> BigInt {
    let d = BigInt::from(den.clone());
    let (q, r) = num.div_mod_floor(&d);
    let twice = &r << 1u32;
    if twice < d {
        q
    } else if twice > d {
        q + 1
    } else if q.is_even() {
        q
    } else {
        q + 1
    }
}

/// Parity of a signed integer (same as the parity of its absolute value).
pub fn parity(x: &BigInt) -> u8 {
    u8::from(x.is_odd())
}

/// Bit length of the integer part of `|x|`; 0 for zero.
pub fn bit_len_int(x: &BigInt) -> u64 {
    x.abs().to_biguint().map_or(0, |u| u.bits())
}

/// Difference of bit lengths used as a budget measure: nonnegative exactly
/// when `value <= limit`, and roughly `log2(limit / value)` in magnitude.
pub fn bit_budget(limit: &BigUint, value: &BigUint) -> i64 {
    let v = if value.is_zero() { BigUint::one() } else { value.clone() };
    if &v <= limit {
        ((limit / &v).bits() as i64) - 1
    } else {
        -(((&v / limit).bits()) as i64)
    }
}

pub fn mul_mod_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, p);
        }
        base = mul_mod_u64(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse");
    pow_mod_u64(a, p - 2, p)
}

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for `u64` (the base set above decides
/// primality exactly in this range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES_U64 {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &b in &MR_BASES_U64 {
        let mut x = pow_mod_u64(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over arbitrary-precision integers with a fixed base set
/// (exact below 2^64, standard fixed-round check above).
pub fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let bases: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'bases: for &b in &bases {
        let b = BigUint::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= start`.
pub fn next_prime_biguint(start: &BigUint) -> BigUint {
    let mut candidate = start.clone();
    if candidate <= BigUint::from(2u32) {
        return BigUint::from(2u32);
    }
    if candidate.is_even() {
        candidate += 1u32;
    }
    loop {
        if is_prime_biguint(&candidate) {
            return candidate;
        }
        candidate += 2u32;
    }
}

/// Ascending primes in `[lo, hi]`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centered_residues() {
        let q = BigUint::from(19u32);
        assert_eq!(centered(&BigUint::from(5u32), &q), BigInt::from(5));
        assert_eq!(centered(&BigUint::from(10u32), &q), BigInt::from(-9));
        assert_eq!(centered(&BigUint::from(9u32), &q), BigInt::from(9));
        // even modulus keeps q/2 itself
        let q = BigUint::from(8u32);
        assert_eq!(centered(&BigUint::from(4u32), &q), BigInt::from(4));
        assert_eq!(centered(&BigUint::from(5u32), &q), BigInt::from(-3));
    }

    #[test]
    fn rounding_ties_to_even() {
        let den = BigUint::from(4u32);
        assert_eq!(round_div_ties_even(&BigInt::from(5), &den), BigInt::from(1));
        assert_eq!(round_div_ties_even(&BigInt::from(6), &den), BigInt::from(2)); // 1.5 -> 2
        assert_eq!(round_div_ties_even(&BigInt::from(10), &den), BigInt::from(2)); // 2.5 -> 2
        assert_eq!(round_div_ties_even(&BigInt::from(-6), &den), BigInt::from(-2)); // -1.5 -> -2
        assert_eq!(round_div_ties_even(&BigInt::from(-10), &den), BigInt::from(-2)); // -2.5 -> -2
        assert_eq!(round_div_ties_even(&BigInt::from(7), &den), BigInt::from(2));
    }

    #[test]
    fn parity_of_negatives() {
        assert_eq!(parity(&BigInt::from(-3)), 1);
        assert_eq!(parity(&BigInt::from(-4)), 0);
        assert_eq!(parity(&BigInt::from(0)), 0);
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = primes_in_range(2, 50);
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn big_primality_and_next_prime() {
        let p = next_prime_biguint(&(BigUint::one() << 80));
        assert!(is_prime_biguint(&p));
        assert!(p > (BigUint::one() << 80));
    }

    #[test]
    fn budget_sign_matches_comparison() {
        let limit = BigUint::from(1024u32);
        assert!(bit_budget(&limit, &BigUint::from(1023u32)) >= 0);
        assert!(bit_budget(&limit, &BigUint::from(1024u32)) >= 0);
        assert!(bit_budget(&limit, &BigUint::from(1025u32)) < 0);
        assert!(bit_budget(&limit, &BigUint::zero()) > 8);
    }
}
