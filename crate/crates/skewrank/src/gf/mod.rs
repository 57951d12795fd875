//! Finite-field tower arithmetic: F_p ⊆ K = GF(q) ⊆ (optional E) ⊆ L = GF(q^n),
//! together with the Galois-theoretic maps every other module consumes
//! (Frobenius, norm, trace, truncated norms, ξ_θ, Hilbert-90 preimages).
//!
//! Elements of L are coordinate vectors over K in the power basis of the
//! defining modulus, with K itself in coordinates over F_p. This keeps all
//! basis conversions coordinate-exact and lets callers pin a specific
//! primitive element.

pub(crate) mod arith;

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use arith::{KArith, PrimeField, ScalarField};

/// Which field of the tower an element claims as home. Arithmetic between
/// elements coerces upward along the tower; the tag is metadata and never
/// affects the stored coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Prime,
    K,
    E,
    L,
}

/// An element of the tower: flat coordinates of length n·e over F_p,
/// block j holding the K-digits of the coefficient of γ^j.
#[derive(Debug, Clone)]
pub struct Elem {
    coords: Vec<u64>,
    home: FieldTag,
}

impl Elem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn home(&self) -> FieldTag {
        self.home
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&d| d == 0)
    }

    pub fn retag(mut self, tag: FieldTag) -> Elem {
        self.home = tag;
        self
    }
}

/// Equality ignores the home tag: it compares elements of L.
impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl Eq for Elem {}

impl Hash for Elem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

/// Serializable description of a tower; the JSON wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u64,
    pub e: usize,
    pub n: usize,
    /// Monic degree-n modulus over K, coefficients ascending. Absent means
    /// the deterministic default (primitive where one exists).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<ModCoeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<usize>,
    #[serde(default = "default_theta_power", skip_serializing_if = "is_default_theta")]
    pub theta_power: usize,
}

/// A modulus coefficient in K: a bare integer (prime-subfield value) or a
/// digit vector of length e.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModCoeff {
    Int(u64),
    Digits(Vec<u64>),
}

fn default_theta_power() -> usize {
    1
}
fn is_default_theta(t: &usize) -> bool {
    *t == 1
}

/// The field chain F_p ⊆ K = GF(p^e) ⊆ (optional E) ⊆ L = GF(q^n) with the
/// generator θ of Gal(L/K). Immutable after construction; all operations
/// are pure, so a tower can be shared freely between threads.
pub struct Tower {
    p: u64,
    e: usize,
    n: usize,
    theta_power: usize,
    k_modulus: Vec<u64>,
    l_modulus: Vec<Vec<u64>>,
    intermediate: Option<usize>,
    e_degree: Option<usize>,
    k: KArith,
    /// frob[j] is the n·e × n·e matrix over F_p of x ↦ x^(p^j), row-major.
    frob: Vec<Vec<u64>>,
    primitive: bool,
    uid: u64,
    logs: OnceLock<HashMap<Vec<u64>, u64>>,
}

/// Squares subgroup K^(2) of K*. In characteristic 2 every element is a
/// square; `proper` is false there and the whole group is returned.
#[derive(Debug, Clone)]
pub struct Squares {
    pub elements: Vec<Elem>,
    pub proper: bool,
}

/// Multiplicative closure of a subset of K*.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub elements: Vec<Elem>,
    pub order: usize,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tower(p={}, e={}, n={}, theta^{})",
            self.p, self.e, self.n, self.theta_power
        )
    }
}

impl Tower {
    /// Tower with the default (deterministic, primitive where possible)
    /// moduli. `p` prime, K = GF(p^e), L = GF(p^(e·n)).
    pub fn build(p: u64, e: usize, n: usize) -> Result<Arc<Tower>> {
        Tower::from_spec(&TowerSpec {
            p,
            e,
            n,
            modulus: None,
            intermediate: None,
            theta_power: 1,
        })
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<Arc<Tower>> {
        let p = spec.p;
        let (e, n) = (spec.e, spec.n);
        if !arith::is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        assert!(e >= 1 && n >= 1, "tower degrees must be positive");
        arith::pow_u128(p as u128, (e * n) as u32); // reject absurd sizes early

        let fp = PrimeField { p };
        let k_modulus = if e == 1 {
            vec![p - 1, 1] // y - 1 over F_p; K = F_p and the digit is the value
        } else {
            arith::default_modulus(&fp, e)?
        };
        let k = KArith {
            p,
            e,
            modulus: k_modulus.clone(),
        };

        let l_modulus: Vec<Vec<u64>> = match &spec.modulus {
            Some(coeffs) => {
                let mut m = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    m.push(match c {
                        ModCoeff::Int(v) => {
                            let mut d = vec![0u64; e];
                            d[0] = v % p;
                            d
                        }
                        ModCoeff::Digits(d) => {
                            if d.len() != e {
                                return Err(Error::Parse {
                                    pos: 0,
                                    msg: format!("modulus coefficient needs {e} digits"),
                                });
                            }
                            d.iter().map(|&x| x % p).collect()
                        }
                    });
                }
                if m.len() != n + 1 || m[n] != k.one() {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("modulus must be monic of degree {n}"),
                    });
                }
                if !arith::poly_is_irreducible(&k, &m) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => pinned_modulus(p, e, n).map_or_else(|| arith::default_modulus(&k, n), Ok)?,
        };

        if arith::gcd(spec.theta_power as u64, n as u64) != 1 {
            return Err(Error::BadThetaPower(spec.theta_power));
        }

        let e_degree = match spec.intermediate {
            None => None,
            Some(0) => return Err(Error::BadIntermediate { index: 0, e, n }),
            Some(s) => {
                if n % s == 0 || (n == 1 && e % s == 0) {
                    Some(e * n / s)
                } else {
                    return Err(Error::BadIntermediate { index: s, e, n });
                }
            }
        };

        let mut tower = Tower {
            p,
            e,
            n,
            theta_power: spec.theta_power,
            k_modulus,
            l_modulus,
            intermediate: spec.intermediate,
            e_degree,
            k,
            frob: Vec::new(),
            primitive: false,
            uid: 0,
            logs: OnceLock::new(),
        };
        tower.build_frobenius();
        tower.primitive = tower.check_primitive();
        tower.uid = tower.fingerprint();
        Ok(Arc::new(tower))
    }

    fn build_frobenius(&mut self) {
        let ne = self.n * self.e;
        let mut id = vec![0u64; ne * ne];
        for i in 0..ne {
            id[i * ne + i] = 1;
        }
        let mut step = vec![0u64; ne * ne];
        for c in 0..ne {
            let mut basis = vec![0u64; ne];
            basis[c] = 1;
            let img = self.pow_coords(&basis, self.p as u128);
            for r in 0..ne {
                step[r * ne + c] = img[r];
            }
        }
        let mut frob = Vec::with_capacity(ne);
        frob.push(id);
        for j in 1..ne {
            let prev = &frob[j - 1];
            let mut m = vec![0u64; ne * ne];
            for r in 0..ne {
                for c in 0..ne {
                    let mut acc = 0u64;
                    for t in 0..ne {
                        acc = (acc + step[r * ne + t] * prev[t * ne + c]) % self.p;
                    }
                    m[r * ne + c] = acc;
                }
            }
            frob.push(m);
        }
        self.frob = frob;
    }

    fn check_primitive(&self) -> bool {
        let order = self.l_size() - 1;
        if order == 0 {
            return false;
        }
        let g = self.gamma();
        if g.is_zero() {
            return false;
        }
        arith::prime_factors(order)
            .into_iter()
            .all(|r| !self.pow(&g, order / r).eq(&self.one()))
    }

    fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (self.p, self.e, self.n, self.theta_power).hash(&mut h);
        self.k_modulus.hash(&mut h);
        self.l_modulus.hash(&mut h);
        self.intermediate.hash(&mut h);
        h.finish()
    }

    // --- descriptors ---

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn theta_power(&self) -> usize {
        self.theta_power
    }
    pub fn uid(&self) -> u64 {
        self.uid
    }
    /// |K| = p^e.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e as u32)
    }
    /// |L| = q^n.
    pub fn l_size(&self) -> u128 {
        arith::pow_u128(self.q() as u128, self.n as u32)
    }
    pub fn intermediate(&self) -> Option<usize> {
        self.intermediate
    }
    /// True when γ generates L*.
    pub fn is_primitive(&self) -> bool {
        self.primitive
    }
    pub fn k_modulus(&self) -> &[u64] {
        &self.k_modulus
    }
    pub fn l_modulus(&self) -> &[Vec<u64>] {
        &self.l_modulus
    }

    pub fn spec(&self) -> TowerSpec {
        let modulus = self
            .l_modulus
            .iter()
            .map(|c| {
                if self.e == 1 {
                    ModCoeff::Int(c[0])
                } else {
                    ModCoeff::Digits(c.clone())
                }
            })
            .collect();
        TowerSpec {
            p: self.p,
            e: self.e,
            n: self.n,
            modulus: Some(modulus),
            intermediate: self.intermediate,
            theta_power: self.theta_power,
        }
    }

    /// Degree over F_p of the tagged subfield.
    pub fn tag_degree(&self, tag: FieldTag) -> usize {
        match tag {
            FieldTag::Prime => 1,
            FieldTag::K => self.e,
            FieldTag::E => self.e_degree.expect("tower has no intermediate field"),
            FieldTag::L => self.e * self.n,
        }
    }

    pub fn size_of(&self, tag: FieldTag) -> u128 {
        arith::pow_u128(self.p as u128, self.tag_degree(tag) as u32)
    }

    /// Smallest of two comparable tags (subfield containment order).
    pub fn join_tags(&self, a: FieldTag, b: FieldTag) -> FieldTag {
        if self.tag_degree(a) >= self.tag_degree(b) {
            a
        } else {
            b
        }
    }

    // --- element constructors ---

    pub fn zero(&self) -> Elem {
        Elem {
            coords: vec![0; self.n * self.e],
            home: FieldTag::Prime,
        }
    }

    pub fn one(&self) -> Elem {
        self.from_prime(1)
    }

    pub fn from_prime(&self, c: u64) -> Elem {
        let mut coords = vec![0; self.n * self.e];
        coords[0] = c % self.p;
        Elem {
            coords,
            home: FieldTag::Prime,
        }
    }

    /// Element of K from its e digits over F_p.
    pub fn from_k_digits(&self, digits: &[u64]) -> Result<Elem> {
        if digits.len() != self.e {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected {} digits for an element of K", self.e),
            });
        }
        let mut coords = vec![0; self.n * self.e];
        for (i, &d) in digits.iter().enumerate() {
            coords[i] = d % self.p;
        }
        let home = self.home_of(&coords);
        Ok(Elem { coords, home })
    }

    /// Element of L from its flat n·e coordinates.
    pub fn from_coords(&self, flat: &[u64]) -> Result<Elem> {
        if flat.len() != self.n * self.e {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected {} coordinates", self.n * self.e),
            });
        }
        let coords: Vec<u64> = flat.iter().map(|&d| d % self.p).collect();
        let home = self.home_of(&coords);
        Ok(Elem { coords, home })
    }

    /// The class of y modulo the defining modulus for n > 1; the canonical
    /// K-generator when n = 1 and e > 1; 1 on the fully degenerate tower.
    pub fn gamma(&self) -> Elem {
        let mut coords = vec![0; self.n * self.e];
        if self.n > 1 {
            coords[self.e] = 1;
        } else if self.e > 1 {
            coords[1] = 1;
        } else {
            coords[0] = 1;
        }
        let home = self.home_of(&coords);
        Elem { coords, home }
    }

    pub fn gamma_pow(&self, k: i64) -> Elem {
        let order = (self.l_size() - 1) as i64;
        let k = k.rem_euclid(order.max(1)) as u128;
        self.pow(&self.gamma(), k)
    }

    /// Element with the given index in lexicographic coordinate order
    /// (coordinate 0 varies fastest).
    pub fn element(&self, mut i: u128) -> Elem {
        let mut coords = vec![0u64; self.n * self.e];
        for d in coords.iter_mut() {
            *d = (i % self.p as u128) as u64;
            i /= self.p as u128;
        }
        let home = self.home_of(&coords);
        Elem { coords, home }
    }

    pub fn index_of(&self, a: &Elem) -> u128 {
        let mut i = 0u128;
        for &d in a.coords.iter().rev() {
            i = i * self.p as u128 + d as u128;
        }
        i
    }

    /// All of L in enumeration order. Every "first match" scan in this
    /// crate uses this order, which makes them deterministic.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.l_size()).map(move |i| self.element(i))
    }

    /// Elements of the tagged subfield, in (global) enumeration order.
    pub fn subfield_elements(&self, tag: FieldTag) -> Vec<Elem> {
        match tag {
            FieldTag::L => self.elements().collect(),
            FieldTag::Prime => (0..self.p as u128).map(|i| self.element(i)).collect(),
            FieldTag::K => (0..self.q() as u128).map(|i| self.element(i)).collect(),
            FieldTag::E => self
                .elements()
                .filter(|a| self.in_field(a, FieldTag::E))
                .collect(),
        }
    }

    // --- membership ---

    pub fn in_field(&self, a: &Elem, tag: FieldTag) -> bool {
        match tag {
            FieldTag::L => true,
            FieldTag::Prime => a.coords[1..].iter().all(|&d| d == 0),
            FieldTag::K => a.coords[self.e..].iter().all(|&d| d == 0),
            FieldTag::E => {
                let d = self.e_degree.expect("tower has no intermediate field");
                self.frob_apply(d % (self.n * self.e), &a.coords) == a.coords
            }
        }
    }

    /// Smallest home field of a coordinate vector.
    pub fn home_of(&self, coords: &[u64]) -> FieldTag {
        let a = Elem {
            coords: coords.to_vec(),
            home: FieldTag::L,
        };
        let mut tags = vec![FieldTag::Prime, FieldTag::K];
        if self.e_degree.is_some() {
            tags.push(FieldTag::E);
        }
        tags.sort_by_key(|&t| self.tag_degree(t));
        for t in tags {
            if self.in_field(&a, t) {
                return t;
            }
        }
        FieldTag::L
    }

    // --- field arithmetic ---

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Elem {
            coords,
            home: self.join_tags(a.home, b.home),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Elem {
            coords,
            home: self.join_tags(a.home, b.home),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let coords = a.coords.iter().map(|&x| (self.p - x) % self.p).collect();
        Elem {
            coords,
            home: a.home,
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem {
            coords: self.mul_coords(&a.coords, &b.coords),
            home: self.join_tags(a.home, b.home),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let ka = &self.k;
        let poly: Vec<Vec<u64>> = (0..self.n)
            .map(|j| a.coords[j * self.e..(j + 1) * self.e].to_vec())
            .collect();
        let inv = arith_poly_inverse(ka, &poly, &self.l_modulus);
        let mut coords = vec![0u64; self.n * self.e];
        for (j, blk) in inv.iter().enumerate() {
            coords[j * self.e..(j + 1) * self.e].copy_from_slice(blk);
        }
        Ok(Elem {
            coords,
            home: a.home,
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, exp: u128) -> Elem {
        Elem {
            coords: self.pow_coords(&a.coords, exp),
            home: a.home,
        }
    }

    fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, e, p) = (self.n, self.e, self.p);
        if n == 1 {
            return self.k.k_mul(a, b);
        }
        let mut acc: Vec<Vec<u64>> = vec![vec![0; e]; 2 * n - 1];
        for i in 0..n {
            let ab = &a[i * e..(i + 1) * e];
            if ab.iter().all(|&d| d == 0) {
                continue;
            }
            for j in 0..n {
                let bb = &b[j * e..(j + 1) * e];
                if bb.iter().all(|&d| d == 0) {
                    continue;
                }
                let prod = self.k.k_mul(ab, bb);
                for (t, &v) in acc[i + j].iter_mut().zip(prod.iter()) {
                    *t = (*t + v) % p;
                }
            }
        }
        for d in (n..2 * n - 1).rev() {
            if acc[d].iter().all(|&x| x == 0) {
                continue;
            }
            let c = std::mem::replace(&mut acc[d], vec![0; e]);
            for j in 0..n {
                let t = self.k.k_mul(&c, &self.l_modulus[j]);
                for (x, &v) in acc[d - n + j].iter_mut().zip(t.iter()) {
                    *x = (*x + p - v) % p;
                }
            }
        }
        let mut coords = vec![0u64; n * e];
        for j in 0..n {
            coords[j * e..(j + 1) * e].copy_from_slice(&acc[j]);
        }
        coords
    }

    fn pow_coords(&self, a: &[u64], mut exp: u128) -> Vec<u64> {
        let mut result = self.one().coords;
        let mut acc = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul_coords(&result, &acc);
            }
            acc = self.mul_coords(&acc, &acc);
            exp >>= 1;
        }
        result
    }

    // --- Galois maps ---

    fn frob_apply(&self, j: usize, coords: &[u64]) -> Vec<u64> {
        let ne = self.n * self.e;
        let m = &self.frob[j % ne.max(1)];
        let mut out = vec![0u64; ne];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for c in 0..ne {
                acc = (acc + m[r * ne + c] * coords[c]) % self.p;
            }
            *o = acc;
        }
        out
    }

    /// θ^i(a) where θ = (q-Frobenius)^theta_power generates Gal(L/K);
    /// i is taken modulo n.
    pub fn frobenius(&self, a: &Elem, i: i64) -> Elem {
        let j = i.rem_euclid(self.n as i64) as usize;
        let exp = self.e * ((self.theta_power % self.n) * j % self.n);
        Elem {
            coords: self.frob_apply(exp, &a.coords),
            home: a.home,
        }
    }

    /// x ↦ x^(p^j), the j-th power of the prime-field Frobenius.
    pub fn prime_frobenius(&self, a: &Elem, j: usize) -> Elem {
        Elem {
            coords: self.frob_apply(j % (self.n * self.e), &a.coords),
            home: a.home,
        }
    }

    /// Trace from L down to the subfield of degree `sub_degree` over F_p:
    /// Σ_i x^(p^(i·sub_degree)) over the relative Galois group.
    pub fn relative_trace(&self, a: &Elem, sub_degree: usize) -> Elem {
        let full = self.n * self.e;
        assert!(sub_degree >= 1 && full % sub_degree == 0);
        let mut acc = self.zero();
        for i in 0..full / sub_degree {
            acc = self.add(&acc, &self.prime_frobenius(a, i * sub_degree));
        }
        acc
    }

    /// N_{L/K}(a) = ∏ θ^i(a); lands in K.
    pub fn norm(&self, a: &Elem) -> Elem {
        let mut acc = self.one();
        let mut cur = a.clone();
        for i in 0..self.n {
            acc = self.mul(&acc, &cur);
            if i + 1 < self.n {
                cur = self.frobenius(&cur, 1);
            }
        }
        assert!(self.in_field(&acc, FieldTag::K), "norm left K");
        let home = self.home_of(&acc.coords);
        acc.retag(home)
    }

    /// Tr_{L/K}(a) = Σ θ^i(a); lands in K.
    pub fn trace(&self, a: &Elem) -> Elem {
        let mut acc = self.zero();
        let mut cur = a.clone();
        for i in 0..self.n {
            acc = self.add(&acc, &cur);
            if i + 1 < self.n {
                cur = self.frobenius(&cur, 1);
            }
        }
        assert!(self.in_field(&acc, FieldTag::K), "trace left K");
        let home = self.home_of(&acc.coords);
        acc.retag(home)
    }

    /// i-th truncated norm N_{θ,i}(a) = ∏_{j<i} θ^j(a); N_{θ,0} = 1 and
    /// N_{θ,n} is the full norm.
    pub fn truncated_norm(&self, a: &Elem, i: usize) -> Elem {
        let mut acc = self.one();
        let mut cur = a.clone();
        for _ in 0..i {
            acc = self.mul(&acc, &cur);
            cur = self.frobenius(&cur, 1);
        }
        acc
    }

    /// ξ_θ(a) = θ(a)/a; its image is exactly the kernel of the norm.
    pub fn xi(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        self.div(&self.frobenius(a, 1), a)
    }

    /// Preimage of `alpha` under ξ_θ, or None when norm(alpha) ≠ 1.
    ///
    /// Found by evaluating χ = Σ N_{θ,i}(alpha⁻¹) θ^i at the inverses of
    /// successive nonzero elements in enumeration order, returning the
    /// first nonzero value x; then ξ_θ(x) = alpha.
    pub fn hilbert90_preimage(&self, alpha: &Elem) -> Result<Option<Elem>> {
        if alpha.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.norm(alpha).eq(&self.one()) {
            return Ok(None);
        }
        if alpha.eq(&self.one()) {
            return Ok(Some(self.one()));
        }
        let ainv = self.inv(alpha)?;
        let chi: Vec<Elem> = (0..self.n).map(|i| self.truncated_norm(&ainv, i)).collect();
        for idx in 1..self.l_size() {
            let c = self.element(idx);
            let arg = self.inv(&c)?;
            let mut x = self.zero();
            for (i, ni) in chi.iter().enumerate() {
                x = self.add(&x, &self.mul(ni, &self.frobenius(&arg, i as i64)));
            }
            if !x.is_zero() {
                debug_assert!(self.xi(&x).unwrap().eq(alpha));
                return Ok(Some(x));
            }
        }
        unreachable!("chi is a nonzero operator and must be nonzero somewhere");
    }

    /// Deterministic α_i with norm(α_i) = λ_i: first match in enumeration
    /// order. The norm is surjective onto K*, so a match always exists.
    pub fn norm_representatives(&self, lambdas: &[Elem]) -> Result<Vec<Elem>> {
        for (i, l) in lambdas.iter().enumerate() {
            if l.is_zero() {
                return Err(Error::ZeroLambda);
            }
            if !self.in_field(l, FieldTag::K) {
                return Err(Error::HomeFieldViolation);
            }
            if lambdas[..i].contains(l) {
                return Err(Error::DuplicateLambda);
            }
        }
        let mut out = Vec::with_capacity(lambdas.len());
        for l in lambdas {
            let mut found = None;
            for idx in 1..self.l_size() {
                let a = self.element(idx);
                if self.norm(&a).eq(l) {
                    found = Some(a);
                    break;
                }
            }
            out.push(found.expect("norm map is surjective onto K*"));
        }
        Ok(out)
    }

    /// Euler criterion on K*: a^((q-1)/2) = 1. Odd q only.
    pub fn is_square(&self, a: &Elem) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.in_field(a, FieldTag::K) {
            return Err(Error::HomeFieldViolation);
        }
        let exp = (self.q() as u128 - 1) / 2;
        Ok(self.pow(a, exp).eq(&self.one()))
    }

    /// K^(2) = {a² : a ∈ K*}, in enumeration order.
    pub fn squares_subgroup(&self) -> Squares {
        let mut elements = Vec::new();
        for i in 1..self.q() as u128 {
            let a = self.element(i);
            let sq = self.mul(&a, &a);
            if !elements.contains(&sq) {
                elements.push(sq);
            }
        }
        elements.sort_by_key(|a| self.index_of(a));
        Squares {
            proper: self.p != 2,
            elements,
        }
    }

    /// Multiplicative closure ⟨Λ⟩ of a set of nonzero elements of K*.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Result<Subgroup> {
        if gens.iter().any(|g| g.is_zero()) {
            return Err(Error::ZeroInput);
        }
        if gens.iter().any(|g| !self.in_field(g, FieldTag::K)) {
            return Err(Error::HomeFieldViolation);
        }
        let mut set = vec![self.one()];
        let mut frontier = vec![self.one()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if !set.contains(&y) {
                    set.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        set.sort_by_key(|a| self.index_of(a));
        Ok(Subgroup {
            order: set.len(),
            elements: set,
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: &Elem) -> Result<u128> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let group = self.l_size() - 1;
        let mut ord = group;
        for r in arith::prime_factors(group) {
            while ord % r == 0 && self.pow(a, ord / r).eq(&self.one()) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Discrete log base γ, available on primitive towers up to 2^20.
    pub fn discrete_log(&self, a: &Elem) -> Option<u64> {
        if a.is_zero() || !self.primitive || self.l_size() > (1 << 20) {
            return None;
        }
        let table = self.logs.get_or_init(|| {
            let mut t = HashMap::new();
            let g = self.gamma();
            let mut cur = self.one();
            for k in 0..(self.l_size() - 1) as u64 {
                t.insert(cur.coords.clone(), k);
                cur = self.mul(&cur, &g);
            }
            t
        });
        table.get(&a.coords).copied()
    }

    /// Basis of the `of` subfield as a vector space over the `over`
    /// subfield, found by a greedy scan in enumeration order.
    pub fn subfield_basis(&self, of: FieldTag, over: FieldTag) -> Vec<Elem> {
        let d_of = self.tag_degree(of);
        let d_over = self.tag_degree(over);
        assert!(d_of % d_over == 0, "fields are not nested");
        let rel = d_of / d_over;
        let over_basis = self.prime_basis(over);
        let ne = self.n * self.e;
        let mut rows: Vec<Vec<u64>> = Vec::new(); // echelon accumulator over F_p
        let mut basis = Vec::with_capacity(rel);
        for idx in 1..self.size_of(of) {
            if basis.len() == rel {
                break;
            }
            let cand = self.element(idx);
            if !self.in_field(&cand, of) {
                continue;
            }
            let saved = rows.clone();
            let mut gain = 0;
            for b in &over_basis {
                let v = self.mul(b, &cand);
                if echelon_insert(self.p, &mut rows, v.coords.clone(), ne) {
                    gain += 1;
                }
            }
            if gain == d_over {
                basis.push(cand);
            } else {
                rows = saved;
            }
        }
        assert_eq!(basis.len(), rel, "subfield basis search failed");
        basis
    }

    /// F_p-basis of a tagged subfield (standard basis where one exists,
    /// greedy deterministic scan for E).
    pub fn prime_basis(&self, tag: FieldTag) -> Vec<Elem> {
        match tag {
            FieldTag::Prime => vec![self.one()],
            FieldTag::K => (0..self.e)
                .map(|a| {
                    let mut c = vec![0; self.n * self.e];
                    c[a] = 1;
                    Elem {
                        coords: c,
                        home: FieldTag::K,
                    }
                })
                .collect(),
            FieldTag::L => (0..self.n * self.e)
                .map(|a| {
                    let mut c = vec![0; self.n * self.e];
                    c[a] = 1;
                    Elem {
                        coords: c,
                        home: FieldTag::L,
                    }
                })
                .collect(),
            FieldTag::E => {
                let d = self.tag_degree(FieldTag::E);
                let ne = self.n * self.e;
                let mut rows = Vec::new();
                let mut basis = Vec::new();
                for idx in 1..self.l_size() {
                    if basis.len() == d {
                        break;
                    }
                    let cand = self.element(idx);
                    if !self.in_field(&cand, FieldTag::E) {
                        continue;
                    }
                    if echelon_insert(self.p, &mut rows, cand.coords.clone(), ne) {
                        basis.push(cand);
                    }
                }
                basis
            }
        }
    }

    /// γ^j for j < n as a basis element (no reduction needed).
    pub fn power_basis_elem(&self, j: usize) -> Elem {
        assert!(j < self.n);
        let mut coords = vec![0; self.n * self.e];
        coords[j * self.e] = 1;
        let home = self.home_of(&coords);
        Elem { coords, home }
    }

    /// The K-coefficient of γ^j in `a`, as an element tagged K (or below).
    pub fn coeff_block(&self, a: &Elem, j: usize) -> Elem {
        assert!(j < self.n);
        let mut coords = vec![0; self.n * self.e];
        coords[..self.e].copy_from_slice(&a.coords[j * self.e..(j + 1) * self.e]);
        let home = self.home_of(&coords);
        Elem { coords, home }
    }

    /// Assemble an element of L from its n coefficients over K.
    pub fn elem_from_k_blocks(&self, blocks: &[Elem]) -> Elem {
        assert_eq!(blocks.len(), self.n);
        let mut coords = vec![0; self.n * self.e];
        for (j, b) in blocks.iter().enumerate() {
            debug_assert!(self.in_field(b, FieldTag::K));
            coords[j * self.e..(j + 1) * self.e].copy_from_slice(&b.coords[..self.e]);
        }
        let home = self.home_of(&coords);
        Elem { coords, home }
    }

    /// Render an element: prime constants as digits, γ-powers on primitive
    /// towers, flat coordinate tuples otherwise.
    pub fn fmt_elem(&self, a: &Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        if self.in_field(a, FieldTag::Prime) {
            return a.coords[0].to_string();
        }
        if let Some(k) = self.discrete_log(a) {
            return match k {
                0 => "1".into(),
                1 => "g".into(),
                _ => format!("g^{k}"),
            };
        }
        let digits: Vec<String> = a.coords.iter().map(|d| d.to_string()).collect();
        format!("[{}]", digits.join(","))
    }
}

/// Inverse of `a` modulo the monic irreducible `m` over K, by the
/// extended right Euclidean algorithm in K[y].
fn arith_poly_inverse(k: &KArith, a: &[Vec<u64>], m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut r0: Vec<Vec<u64>> = m.to_vec();
    let mut r1: Vec<Vec<u64>> = a.to_vec();
    arith::poly_trim(k, &mut r1);
    let mut s0: Vec<Vec<u64>> = vec![];
    let mut s1: Vec<Vec<u64>> = vec![k.one()];
    while !r1.is_empty() {
        let (q, r) = arith::poly_divmod(k, &r0, &r1);
        let qs1 = arith::poly_mul(k, &q, &s1);
        let s2 = arith::poly_sub(k, &s0, &qs1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    debug_assert_eq!(r0.len(), 1, "modulus must be irreducible");
    let c = k.k_inv(&r0[0]);
    let mut out: Vec<Vec<u64>> = s0.iter().map(|x| k.k_mul(&c, x)).collect();
    out.resize(m.len() - 1, k.zero());
    out
}

/// Insert a vector into an F_p row-echelon accumulator; true if the rank grew.
fn echelon_insert(p: u64, rows: &mut Vec<Vec<u64>>, mut v: Vec<u64>, width: usize) -> bool {
    for row in rows.iter() {
        let pivot = row.iter().position(|&x| x != 0).unwrap();
        if v[pivot] != 0 {
            let c = v[pivot] * arith::inv_mod(row[pivot], p) % p;
            for j in 0..width {
                v[j] = (v[j] + p - c * row[j] % p) % p;
            }
        }
    }
    if v.iter().all(|&x| x == 0) {
        false
    } else {
        rows.push(v);
        true
    }
}

/// Pinned default moduli so the worked examples reproduce without input.
fn pinned_modulus(p: u64, e: usize, n: usize) -> Option<Vec<Vec<u64>>> {
    if p == 5 && e == 1 && n == 3 {
        // y^3 + 3y + 3, primitive over F_5
        return Some(vec![vec![3], vec![3], vec![0], vec![1]]);
    }
    None
}
