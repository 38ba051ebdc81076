//! Quotient-field plaintext spaces `Z_p[x]/<phi_n>` with inversion, plus the
//! underlying dense polynomial arithmetic over prime fields.

use crate::arith::is_prime_u64;
use crate::cyclotomic::{cyclotomic_poly, discriminant, euler_phi, find_field_prime, is_square,
                        rabin_irreducible, FieldError};

/// Dense polynomial arithmetic over `Z_p` (`p` prime), coefficients
/// little-endian in `[0, p)`, no trailing zeros.
pub(crate) mod modpoly {
    use num_bigint::BigUint;
    use num_traits::Zero;

    use crate::arith::{inv_mod_u64, mul_mod_u64};

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = (out[i] + c) % p;
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = (out[i] + p - c) % p;
        }
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod_u64(x, y, p)) % p;
            }
        }
        trim(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!d.is_empty(), "division by zero polynomial");
        if a.len() < d.len() {
            return (vec![], a.to_vec());
        }
        let lead_inv = inv_mod_u64(*d.last().unwrap(), p);
        let mut rem = a.to_vec();
        let qlen = a.len() - d.len() + 1;
        let mut quot = vec![0u64; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1];
            if top == 0 {
                continue;
            }
            let q = mul_mod_u64(top, lead_inv, p);
            quot[k] = q;
            for (j, &dc) in d.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod_u64(q, dc, p)) % p;
            }
        }
        (trim(quot), trim(rem))
    }

    pub fn rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
        div_rem(a, d, p).1
    }

    fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => vec![],
            Some(&1) => a.to_vec(),
            Some(&lc) => {
                let inv = inv_mod_u64(lc, p);
                trim(a.iter().map(|&c| mul_mod_u64(c, inv, p)).collect())
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        make_monic(&x, p)
    }

    /// Extended gcd: returns `(g, u)` with `u*a = g (mod m)` and `g` monic.
    pub fn ext_gcd_first(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r0 = a.to_vec();
        let mut r1 = m.to_vec();
        let mut u0 = vec![1u64];
        let mut u1: Vec<u64> = vec![];
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1, p);
            let next_u = sub(&u0, &mul(&q, &u1, p), p);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = next_u;
        }
        if let Some(&lc) = r0.last() {
            if lc != 1 {
                let inv = inv_mod_u64(lc, p);
                r0 = trim(r0.iter().map(|&c| mul_mod_u64(c, inv, p)).collect());
                u0 = trim(u0.iter().map(|&c| mul_mod_u64(c, inv, p)).collect());
            }
        }
        (r0, u0)
    }

    /// `base^exp mod (f, p)` by repeated squaring.
    pub fn pow_mod(base: &[u64], exp: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        if exp.is_zero() {
            return acc;
        }
        let mut sq = rem(base, f, p);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = rem(&mul(&acc, &sq, p), f, p);
            }
            if i + 1 < bits {
                sq = rem(&mul(&sq, &sq, p), f, p);
            }
        }
        acc
    }
}

/// A field `Z_p[x]/<phi_n>`: `p` prime, `phi_n` irreducible mod `p`.
/// Elements live in [`FieldElement`] and all arithmetic goes through the
/// context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    n: u64,
    p: u64,
    modulus: Vec<u64>,
    degree: usize,
}

/// Element of a [`FieldContext`], stored as a fixed-width coefficient
/// vector (length = field degree, entries in `[0, p)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl FieldContext {
    /// Builds the context, verifying that `p` is prime and that the `n`-th
    /// cyclotomic polynomial is irreducible mod `p`.
    pub fn new(n: u64, p: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        let phi = cyclotomic_poly(n);
        if !rabin_irreducible(&phi, p) {
            return Err(FieldError::NotIrreducible(p));
        }
        let modulus = phi.to_mod_coeffs(p);
        let degree = modulus.len() - 1;
        Ok(FieldContext { n, p, modulus, degree })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn widen(&self, v: Vec<u64>) -> FieldElement {
        let mut coeffs = v;
        coeffs.resize(self.degree, 0);
        FieldElement { coeffs }
    }

    pub fn zero(&self) -> FieldElement {
        self.widen(vec![])
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// Constant polynomial `c mod p`.
    pub fn constant(&self, c: u64) -> FieldElement {
        self.widen(vec![c % self.p])
    }

    /// Constant from a signed integer (e.g. Lagrange node differences).
    pub fn constant_signed(&self, c: i64) -> FieldElement {
        let p = self.p as i64;
        self.constant(c.rem_euclid(p) as u64)
    }

    /// Reduces arbitrary coefficients into the field.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        self.widen(modpoly::rem(&modpoly::trim(reduced), &self.modulus, self.p))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.widen(modpoly::add(&a.coeffs, &b.coeffs, self.p))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.widen(modpoly::sub(&a.coeffs, &b.coeffs, self.p))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = modpoly::mul(
            &modpoly::trim(a.coeffs.clone()),
            &modpoly::trim(b.coeffs.clone()),
            self.p,
        );
        self.widen(modpoly::rem(&prod, &self.modulus, self.p))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over
    /// `Z_p[x]`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        let at = modpoly::trim(a.coeffs.clone());
        if at.is_empty() {
            return Err(FieldError::ZeroInverse);
        }
        let (g, u) = modpoly::ext_gcd_first(&at, &self.modulus, self.p);
        if g.len() != 1 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.widen(u))
    }

    /// Product over an iterator, with the empty product equal to one.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a FieldElement>) -> FieldElement {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Picks the smallest usable field for records of `n_bits` bits: the first
/// cyclotomic index with degree above the record width and a non-square
/// discriminant, paired with the smallest irreducible prime `>= min_p`.
pub fn choose_field(n_bits: usize, min_p: u64) -> Result<FieldContext, FieldError> {
    const PRIME_SEARCH_SPAN: u64 = 20_000;
    for n in 3..=200u64 {
        if euler_phi(n) as usize <= n_bits {
            continue;
        }
        let phi = cyclotomic_poly(n);
        if is_square(&discriminant(&phi)) {
            continue;
        }
        match find_field_prime(n, min_p.max(2), min_p.max(2) + PRIME_SEARCH_SPAN) {
            Ok(p) => return FieldContext::new(n, p),
            Err(FieldError::SearchExhausted { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FieldError::SearchExhausted {
        min: min_p,
        max: min_p + PRIME_SEARCH_SPAN,
    })
}
