//! Cyclotomic polynomials and the search for primes that turn the quotient
//! ring into a field: exact discriminants via subresultants, an integer
//! square test, and Rabin's irreducibility test over prime fields.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime_u64, primes_in_range};
use crate::field::modpoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The discriminant is a perfect square, so the polynomial factors
    /// modulo every prime and no field modulus exists.
    #[error("discriminant of the cyclotomic polynomial is a square; no prime yields a field")]
    SquareDiscriminant,
    #[error("no prime in [{min}, {max}] makes the polynomial irreducible")]
    SearchExhausted { min: u64, max: u64 },
    #[error("zero (or a zero divisor) has no inverse")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible modulo {0}")]
    NotIrreducible(u64),
}

/// Dense polynomial with exact integer coefficients, little-endian by
/// degree. The coefficient vector carries no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: u64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n as usize] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            out[i] -= b;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs(out)
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a
    /// remainder. The divisor's leading coefficient must divide exactly at
    /// every step (always the case for monic divisors).
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let out_len = rem.len() - divisor.coeffs.len() + 1;
        let mut quot = vec![BigInt::zero(); out_len];
        for k in (0..out_len).rev() {
            let top = rem[k + divisor.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::div_rem(top, lead.clone());
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[k + j] -= prod;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let d_deg = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut steps = self.degree() as i64 - d_deg as i64 + 1;
        while !rem.is_empty() && rem.len() - 1 >= d_deg && steps > 0 {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - d_deg;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prod = &top * d;
                rem[shift + j] -= prod;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            steps -= 1;
        }
        // Remaining multiplier applications keep the pseudo-remainder scale
        // consistent when the degree dropped by more than one.
        while steps > 0 {
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            steps -= 1;
        }
        IntPoly::from_coeffs(rem)
    }

    /// Reduce the coefficients modulo `p` into a dense `u64` vector.
    pub fn to_mod_coeffs(&self, p: u64) -> Vec<u64> {
        let p_big = BigInt::from(p);
        let out = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p_big);
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        modpoly::trim(out)
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by the
/// product of all lower-index cyclotomic polynomials dividing it.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut den = IntPoly::one();
        for (&e, phi) in memo.iter() {
            if d % e == 0 {
                den = den.mul(phi);
            }
        }
        let num = IntPoly::x_pow_minus_one(d);
        let phi_d = num
            .div_exact(&den)
            .expect("cyclotomic division is always exact");
        memo.insert(d, phi_d);
    }
    memo.remove(&n).unwrap()
}

/// Euler's totient: the degree of the `n`-th cyclotomic polynomial.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Resultant of two integer polynomials, exactly, via the subresultant
/// polynomial remainder sequence (fraction-free).
pub fn resultant(a0: &IntPoly, b0: &IntPoly) -> BigInt {
    if a0.is_zero() || b0.is_zero() {
        return BigInt::zero();
    }
    if a0.degree() == 0 {
        return a0.leading().pow(b0.degree() as u32);
    }
    if b0.degree() == 0 {
        return b0.leading().pow(a0.degree() as u32);
    }
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut sign = 1i32;
    if a.degree() < b.degree() {
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let scale = &g * h.pow(delta);
        b = IntPoly::from_coeffs(
            r.coeffs()
                .iter()
                .map(|c| {
                    let (q, rem) = c.div_rem(&scale);
                    debug_assert!(rem.is_zero(), "subresultant division is exact");
                    q
                })
                .collect(),
        );
        g = a.leading();
        if delta > 0 {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            h = q;
        }
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.degree() == 0 {
            let da = a.degree() as u32;
            let num = b.leading().pow(da);
            let den = h.pow(da.saturating_sub(1));
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            return BigInt::from(sign) * q;
        }
    }
}

/// Discriminant via `disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)`.
/// A zero value signals repeated roots.
pub fn discriminant(f: &IntPoly) -> BigInt {
    let d = f.degree();
    assert!(d >= 1, "discriminant needs degree >= 1");
    if d == 1 {
        return BigInt::one();
    }
    let res = resultant(f, &f.derivative());
    let (q, rem) = res.div_rem(&f.leading());
    debug_assert!(rem.is_zero());
    if (d * (d - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

/// Whether `z` is a perfect square in Z (negative integers never are).
pub fn is_square(z: &BigInt) -> bool {
    if z.is_negative() {
        return false;
    }
    let u = z.to_biguint().unwrap();
    let root = u.sqrt();
    &root * &root == u
}

/// Rabin's irreducibility test for `f mod p`: `f` (nonconstant, reduced
/// mod the prime `p`) is irreducible iff `x^(p^d) = x (mod f, p)` and
/// `gcd(x^(p^(d/r)) - x, f) = 1` for every prime `r | d`.
pub fn rabin_irreducible(f: &IntPoly, p: u64) -> bool {
    assert!(is_prime_u64(p), "modulus must be prime");
    let fp = f.to_mod_coeffs(p);
    if fp.len() < 2 {
        return false; // constant (or vanishing) reduction
    }
    let d = fp.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1u64];
    for r in prime_divisors(d as u64) {
        let k = d as u64 / r;
        let exp = BigUint::from(p).pow(k as u32);
        let xq = modpoly::pow_mod(&x, &exp, &fp, p);
        let diff = modpoly::sub(&xq, &x, p);
        let g = modpoly::gcd(&diff, &fp, p);
        if g.len() != 1 {
            return false;
        }
    }
    let exp = BigUint::from(p).pow(d as u32);
    let xq = modpoly::pow_mod(&x, &exp, &fp, p);
    xq == x
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime in `[min, max]` for which the `n`-th cyclotomic
/// polynomial is irreducible. Fails fast when the discriminant is a square
/// (then no prime exists at all).
pub fn find_field_prime(n: u64, min: u64, max: u64) -> Result<u64, FieldError> {
    let phi = cyclotomic_poly(n);
    if is_square(&discriminant(&phi)) {
        return Err(FieldError::SquareDiscriminant);
    }
    for p in primes_in_range(min.max(2), max) {
        if rabin_irreducible(&phi, p) {
            return Ok(p);
        }
    }
    Err(FieldError::SearchExhausted { min, max })
}

/// All primes below `bound` for which the `n`-th cyclotomic polynomial is
/// irreducible, with the same square-discriminant guard.
pub fn irreducible_primes_below(n: u64, bound: u64) -> Result<Vec<u64>, FieldError> {
    let phi = cyclotomic_poly(n);
    if is_square(&discriminant(&phi)) {
        return Err(FieldError::SquareDiscriminant);
    }
    Ok(primes_in_range(2, bound.saturating_sub(1))
        .into_iter()
        .filter(|&p| rabin_irreducible(&phi, p))
        .collect())
}

/// CLI-facing summary of a field-prime search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSearchReport {
    pub n: u64,
    pub degree: u64,
    pub disc_is_square: bool,
    pub primes_tested: u64,
    pub chosen_p: Option<u64>,
    pub elapsed_ms: u64,
    pub irreducible_primes: Vec<u64>,
}

/// Runs the full search pipeline over primes in `[min, max]` and reports
/// every hit along with the first one.
pub fn field_search_report(n: u64, min: u64, max: u64) -> FieldSearchReport {
    let start = Instant::now();
    let phi = cyclotomic_poly(n);
    let degree = phi.degree() as u64;
    let disc_is_square = is_square(&discriminant(&phi));
    let mut tested = 0u64;
    let mut hits = Vec::new();
    if !disc_is_square {
        for p in primes_in_range(min.max(2), max) {
            tested += 1;
            if rabin_irreducible(&phi, p) {
                hits.push(p);
            }
        }
    }
    FieldSearchReport {
        n,
        degree,
        disc_is_square,
        primes_tested: tested,
        chosen_p: hits.first().copied(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        irreducible_primes: hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn cyclotomic_base_cases() {
        assert_eq!(cyclotomic_poly(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), poly(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for n in 1..=200u64 {
            let phi = cyclotomic_poly(n);
            assert!(phi.is_monic(), "phi_{n} not monic");
            assert_eq!(phi.degree() as u64, euler_phi(n), "degree mismatch at {n}");
        }
    }

    #[test]
    fn product_over_divisors_reconstructs_xn_minus_one() {
        for n in [1u64, 2, 6, 12, 30, 36, 105] {
            let mut prod = IntPoly::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&cyclotomic_poly(d));
                }
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n), "mismatch at n={n}");
        }
    }

    #[test]
    fn cyclotomic_107_has_degree_106() {
        let phi = cyclotomic_poly(107);
        assert_eq!(phi.degree(), 106);
        // prime index: all coefficients are 1
        assert!(phi.coeffs().iter().all(|c| c.is_one()));
    }

    /// Independent resultant oracle: fraction-free Gaussian elimination
    /// (Bareiss) on the Sylvester matrix.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let m = a.degree();
        let n = b.degree();
        if m == 0 {
            return a.leading().pow(n as u32);
        }
        if n == 0 {
            return b.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        // Bareiss elimination
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                let swap = (k + 1..size).find(|&r| !mat[r][k].is_zero());
                match swap {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    mat[i][j] = q;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * mat[size - 1][size - 1].clone()
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let cases = vec![
            (poly(&[1, 0, 1]), poly(&[0, 2])),
            (poly(&[1, 1, 1]), poly(&[1, 2])),
            (poly(&[-2, 0, 0, 1]), poly(&[0, 0, 3])),
            (poly(&[3, -1, 2, 5]), poly(&[1, 4, -2])),
            (poly(&[1, 2, 3, 4, 5]), poly(&[-1, 0, 2, 1])),
            (poly(&[7, 0, -3, 0, 1, 2]), poly(&[2, -5, 1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(
                resultant(&a, &b),
                sylvester_resultant(&a, &b),
                "resultant mismatch for {a:?}, {b:?}"
            );
            assert_eq!(
                resultant(&b, &a).abs(),
                sylvester_resultant(&a, &b).abs(),
                "swapped-magnitude mismatch"
            );
        }
    }

    #[test]
    fn discriminant_small_cases() {
        // from the root pair of the third cyclotomic polynomial
        assert_eq!(discriminant(&cyclotomic_poly(3)), BigInt::from(-3));
        assert_eq!(discriminant(&poly(&[-1, 1])), BigInt::from(1));
        assert_eq!(discriminant(&poly(&[1, 0, 1])), BigInt::from(-4));
        // x^2 - 1 = (x-1)(x+1): (1 - (-1))^2 = 4
        assert_eq!(discriminant(&poly(&[-1, 0, 1])), BigInt::from(4));
    }

    #[test]
    fn discriminant_matches_prime_index_closed_form() {
        // disc(phi_p) = (-1)^((p-1)/2) * p^(p-2) for prime p
        for p in [3u64, 5, 7, 11] {
            let expected = {
                let base = BigInt::from(p).pow(p as u32 - 2);
                if (p - 1) / 2 % 2 == 1 {
                    -base
                } else {
                    base
                }
            };
            assert_eq!(discriminant(&cyclotomic_poly(p)), expected, "p={p}");
        }
    }

    #[test]
    fn square_test() {
        assert!(is_square(&BigInt::zero()));
        assert!(!is_square(&BigInt::from(-3)));
        assert!(is_square(&BigInt::from(49)));
        assert!(!is_square(&BigInt::from(48)));
        assert!(is_square(&(BigInt::from(12345678901234i64).pow(2))));
    }

    #[test]
    fn rabin_agrees_with_stated_examples() {
        assert!(rabin_irreducible(&poly(&[1, 0, 1]), 3));
        // factors as (x-2)(x-3) mod 5
        assert!(!rabin_irreducible(&poly(&[1, 0, 1]), 5));
    }

    /// brute-force reducibility: search for a monic factor of degree
    /// 1..=deg/2 by trial division
    fn brute_force_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        for fd in 1..=d / 2 {
            let count = p.pow(fd as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(fd + 1);
                let mut rest = idx;
                for _ in 0..fd {
                    cand.push(rest % p);
                    rest /= p;
                }
                cand.push(1);
                let (_, r) = modpoly::div_rem(f, &cand, p);
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_brute_force_search() {
        for p in [2u64, 3, 5, 7] {
            for d in 2..=4usize {
                let count = p.pow(d as u32);
                for idx in 0..count {
                    let mut coeffs = Vec::with_capacity(d + 1);
                    let mut rest = idx;
                    for _ in 0..d {
                        coeffs.push(BigInt::from(rest % p));
                        rest /= p;
                    }
                    coeffs.push(BigInt::one());
                    let f = IntPoly::from_coeffs(coeffs);
                    let fp = f.to_mod_coeffs(p);
                    assert_eq!(
                        rabin_irreducible(&f, p),
                        brute_force_irreducible(&fp, p),
                        "disagreement at p={p}, f={fp:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn field_prime_search_with_lower_bound() {
        // first usable prime for index 4 (x^2 + 1)
        assert_eq!(find_field_prime(4, 2, 100).unwrap(), 3);
        // x^2 + 1 irreducible mod p iff p = 3 (mod 4)
        assert_eq!(find_field_prime(4, 10, 100).unwrap(), 11);
    }

    #[test]
    fn square_discriminant_fails_fast() {
        // disc(x^4 + 1) = 256 = 16^2, so index 8 reduces mod every prime
        assert_eq!(discriminant(&cyclotomic_poly(8)), BigInt::from(256));
        assert_eq!(
            find_field_prime(8, 2, 1000),
            Err(FieldError::SquareDiscriminant)
        );
        assert_eq!(
            irreducible_primes_below(8, 1000),
            Err(FieldError::SquareDiscriminant)
        );
    }

    #[test]
    fn exhausted_search_reports_range() {
        // index 4 needs p = 3 (mod 4); 5 and 13 both fail in [5, 6] and [13, 16]
        assert_eq!(
            find_field_prime(4, 5, 6),
            Err(FieldError::SearchExhausted { min: 5, max: 6 })
        );
    }
}
