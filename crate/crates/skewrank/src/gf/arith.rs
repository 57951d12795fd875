//! Construction-time arithmetic: the prime field on bare residues, the
//! middle field K = GF(p^e) on raw digit vectors, and dense univariate
//! polynomials over either. Used to validate moduli and search for
//! default ones before a [`Tower`](super::Tower) exists.

use crate::error::{Error, Result};

pub(crate) fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors by trial division; inputs stay below 2^40 at
/// the field sizes this library targets.
pub(crate) fn prime_factors(mut m: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0 mod p
    let (mut r0, mut r1) = (a as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Coefficient-field interface shared by F_p and K while building a tower.
pub(crate) trait ScalarField {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn size(&self) -> u128;
    fn from_index(&self, i: u128) -> Self::El;
}

pub(crate) struct PrimeField {
    pub p: u64,
}

impl ScalarField for PrimeField {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    fn size(&self) -> u128 {
        self.p as u128
    }
    fn from_index(&self, i: u128) -> u64 {
        (i % self.p as u128) as u64
    }
}

/// K = GF(p^e) as digit vectors of length e modulo a monic irreducible.
pub(crate) struct KArith {
    pub p: u64,
    pub e: usize,
    /// monic, length e + 1, ascending
    pub modulus: Vec<u64>,
}

impl KArith {
    pub fn k_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..self.e).map(|i| (a[i] + b[i]) % self.p).collect()
    }

    pub fn k_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..self.e)
            .map(|i| (a[i] + self.p - b[i] % self.p) % self.p)
            .collect()
    }

    pub fn k_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.e;
        if e == 1 {
            return vec![a[0] * b[0] % self.p];
        }
        let mut acc = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                acc[i + j] = (acc[i + j] + a[i] * b[j]) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for d in (e..2 * e - 1).rev() {
            let c = acc[d];
            if c == 0 {
                continue;
            }
            acc[d] = 0;
            for j in 0..e {
                let t = c * self.modulus[j] % self.p;
                acc[d - e + j] = (acc[d - e + j] + self.p - t) % self.p;
            }
        }
        acc.truncate(e);
        acc
    }

    pub fn k_is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&d| d == 0)
    }

    /// Inverse via extended Euclid in F_p[y] against the modulus.
    pub fn k_inv(&self, a: &[u64]) -> Vec<u64> {
        assert!(!self.k_is_zero(a), "inverse of zero in K");
        if self.e == 1 {
            return vec![inv_mod(a[0], self.p)];
        }
        let fp = PrimeField { p: self.p };
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.to_vec();
        poly_trim(&fp, &mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&fp, &r0, &r1);
            let qs1 = poly_mul(&fp, &q, &s1);
            let s2 = poly_sub(&fp, &s0, &qs1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd, a unit since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = inv_mod(r0[0], self.p);
        let mut out: Vec<u64> = s0.iter().map(|&x| c * x % self.p).collect();
        out.resize(self.e, 0);
        out
    }
}

impl ScalarField for KArith {
    type El = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.e]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.e];
        v[0] = 1;
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        self.k_is_zero(a)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.k_add(a, b)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.k_sub(a, b)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.k_mul(a, b)
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        self.k_inv(a)
    }
    fn size(&self) -> u128 {
        (self.p as u128).pow(self.e as u32)
    }
    fn from_index(&self, mut i: u128) -> Vec<u64> {
        let mut v = vec![0u64; self.e];
        for d in v.iter_mut() {
            *d = (i % self.p as u128) as u64;
            i /= self.p as u128;
        }
        v
    }
}

// --- dense univariate polynomials, coefficients ascending ---

pub(crate) fn poly_trim<F: ScalarField>(f: &F, a: &mut Vec<F::El>) {
    while a.last().map_or(false, |c| f.is_zero(c)) {
        a.pop();
    }
}

pub(crate) fn poly_sub<F: ScalarField>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut out: Vec<F::El> = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = if i < a.len() { a[i].clone() } else { f.zero() };
        let y = if i < b.len() { b[i].clone() } else { f.zero() };
        out.push(f.sub(&x, &y));
    }
    poly_trim(f, &mut out);
    out
}

pub(crate) fn poly_mul<F: ScalarField>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    poly_trim(f, &mut out);
    out
}

pub(crate) fn poly_divmod<F: ScalarField>(f: &F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<F::El> = a.to_vec();
    poly_trim(f, &mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead_inv = f.inv(&b[db]);
    let mut quot = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = f.mul(&rem[dr], &lead_inv);
        quot[dr - db] = c.clone();
        for j in 0..=db {
            let t = f.mul(&c, &b[j]);
            rem[dr - db + j] = f.sub(&rem[dr - db + j], &t);
        }
        poly_trim(f, &mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(f, &mut quot);
    (quot, rem)
}

pub(crate) fn poly_gcd<F: ScalarField>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut r0: Vec<F::El> = a.to_vec();
    let mut r1: Vec<F::El> = b.to_vec();
    poly_trim(f, &mut r0);
    poly_trim(f, &mut r1);
    while !r1.is_empty() {
        let (_, r) = poly_divmod(f, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if let Some(last) = r0.last().cloned() {
        let c = f.inv(&last);
        for x in r0.iter_mut() {
            *x = f.mul(x, &c);
        }
    }
    r0
}

/// y^exp modulo the monic polynomial `m`.
pub(crate) fn poly_pow_y_mod<F: ScalarField>(f: &F, exp: u128, m: &[F::El]) -> Vec<F::El> {
    let y = vec![f.zero(), f.one()];
    poly_powmod(f, &y, exp, m)
}

pub(crate) fn poly_powmod<F: ScalarField>(f: &F, base: &[F::El], mut exp: u128, m: &[F::El]) -> Vec<F::El> {
    let mut result = vec![f.one()];
    let mut acc = poly_divmod(f, base, m).1;
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_divmod(f, &poly_mul(f, &result, &acc), m).1;
        }
        acc = poly_divmod(f, &poly_mul(f, &acc, &acc), m).1;
        exp >>= 1;
    }
    result
}

/// Rabin's irreducibility test for a monic polynomial of degree d over a
/// field of size q: y^(q^d) = y mod m, and gcd(y^(q^(d/r)) - y, m) = 1
/// for every prime r dividing d.
pub(crate) fn poly_is_irreducible<F: ScalarField>(f: &F, m: &[F::El]) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = f.size();
    let y = vec![f.zero(), f.one()];
    let top = poly_powmod(f, &y, pow_u128(q, d as u32), m);
    if poly_sub(f, &top, &y) != Vec::<F::El>::new() {
        return false;
    }
    for r in prime_factors(d as u128) {
        let sub = poly_powmod(f, &y, pow_u128(q, (d as u128 / r) as u32), m);
        let diff = poly_sub(f, &sub, &y);
        let g = poly_gcd(f, m, &diff);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// True when the class of y modulo `m` generates the full multiplicative
/// group of the degree-d extension.
pub(crate) fn poly_root_is_primitive<F: ScalarField>(f: &F, m: &[F::El]) -> bool {
    let d = m.len() - 1;
    let order = pow_u128(f.size(), d as u32) - 1;
    if order == 0 {
        return false;
    }
    for r in prime_factors(order) {
        let pw = poly_pow_y_mod(f, order / r, m);
        if pw == vec![f.one()] {
            return false;
        }
    }
    true
}

pub(crate) fn pow_u128(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).expect("field size overflow")
}

/// First monic degree-d polynomial, in coefficient enumeration order
/// (constant term fastest), whose root is primitive; falls back to the
/// first irreducible when d = 1 leaves no primitive choice.
pub(crate) fn default_modulus<F: ScalarField>(f: &F, d: usize) -> Result<Vec<F::El>> {
    if d == 1 {
        // y - 1: the degenerate extension pins gamma = 1
        return Ok(vec![f.sub(&f.zero(), &f.one()), f.one()]);
    }
    let count = pow_u128(f.size(), d as u32);
    let mut first_irreducible: Option<Vec<F::El>> = None;
    for idx in 0..count {
        let mut m: Vec<F::El> = Vec::with_capacity(d + 1);
        let mut i = idx;
        for _ in 0..d {
            m.push(f.from_index(i % f.size()));
            i /= f.size();
        }
        m.push(f.one());
        if !poly_is_irreducible(f, &m) {
            continue;
        }
        if poly_root_is_primitive(f, &m) {
            return Ok(m);
        }
        first_irreducible.get_or_insert(m);
    }
    first_irreducible.ok_or(Error::ReducibleModulus)
}
