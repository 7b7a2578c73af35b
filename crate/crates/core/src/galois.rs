//! Finite fields GF(p^m) for small prime powers.
//!
//! Elements are stored by their canonical index: the coefficients of the
//! polynomial-basis representation packed as base-p digits, constant term
//! in the least significant digit. Multiplication goes through log/antilog
//! tables built from a verified primitive element; the schoolbook path
//! (polynomial product reduced by the modulus) is kept public so the tables
//! can be cross-checked.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest supported field cardinality.
pub const MAX_ORDER: u64 = 1 << 16;

/// One irreducible modulus per (p, m), coefficients low to high.
/// Every entry is re-checked for irreducibility when a field is built.
const DEFAULT_MODULI: &[(u32, &[u32])] = &[
    (2, &[0, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[0, 1]),
    (3, &[2, 1, 1]),
    (3, &[1, 0, 2, 1]),
    (3, &[2, 0, 0, 1, 1]),
    (3, &[1, 0, 0, 0, 2, 1]),
    (3, &[2, 0, 0, 0, 0, 1, 1]),
    (3, &[1, 0, 0, 0, 0, 1, 2, 1]),
    (3, &[2, 0, 0, 0, 0, 1, 0, 0, 1]),
    (3, &[1, 0, 0, 0, 0, 0, 2, 1, 0, 1]),
    (3, &[2, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1]),
];

/// Returns the built-in modulus for GF(p^m), if one is shipped.
pub fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    DEFAULT_MODULI.iter().find(|(pp, coeffs)| *pp == p && coeffs.len() as u32 == m + 1).map(|(_, c)| c.to_vec())
}

/// Serializable description of a field: `{p, m, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    /// Modulus coefficients, low to high. Omitted means the built-in default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldDescriptor {
    pub fn build(&self) -> Result<Field> {
        match &self.modulus {
            Some(modulus) => {
                if modulus.len() as u32 != self.m + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {} but m = {}",
                        modulus.len().saturating_sub(1),
                        self.m
                    )));
                }
                Field::with_modulus(self.p, modulus.clone())
            }
            None => Field::new(self.p, self.m),
        }
    }

    /// Parses `"p^m"` or a prime power `"q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse field '{s}' (expected p^m or q)"));
        let (p, m) = if let Some((p, m)) = s.split_once('^') {
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let m: u32 = m.trim().parse().map_err(|_| bad())?;
            (p, m)
        } else {
            let q: u64 = s.parse().map_err(|_| bad())?;
            prime_power(q).ok_or_else(bad)?
        };
        Ok(FieldDescriptor { p, m, modulus: None })
    }
}

/// Element of a [`Field`], identified by its canonical index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(p^m) with its lookup tables. Immutable once built.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    // exp[i] = g^i for i in 0..2(q-1), so a product of two logs never needs a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("p", &self.p).field("m", &self.m).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl Field {
    /// GF(p^m) with the built-in modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        let modulus = default_modulus(p, m).ok_or_else(|| {
            Error::InvalidField(format!("no built-in modulus for GF({p}^{m}); supply one explicitly"))
        })?;
        Self::with_modulus(p, modulus)
    }

    /// GF(2^m) with the built-in modulus.
    pub fn binary(m: u32) -> Result<Self> {
        Self::new(2, m)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, m: self.m, modulus: Some(self.modulus.clone()) }
    }

    /// Builds GF(p^m) from an explicit monic modulus of degree m (coefficients low to high).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("GF({p}^{m}) exceeds 2^16 elements")))? as u32;
        if !base::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
        }

        let mut field = Field { p, m, q, modulus, generator: Elem::ONE, exp: Vec::new(), log: Vec::new() };
        let g = field.find_primitive_element();
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![0u32; q as usize];
        let mut cur = Elem::ONE;
        for i in 0..order {
            exp.push(cur);
            log[cur.0 as usize] = i as u32;
            cur = field.mul_schoolbook(cur, g);
        }
        debug_assert_eq!(cur, Elem::ONE);
        for i in 0..order {
            exp.push(exp[i]);
        }
        field.generator = g;
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements q = p^m.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(Error::Usage(format!("index {index} out of range for {self}")))
        }
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, c: u64) -> Elem {
        Elem((c % self.p as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// The primitive element the log tables are built on.
    #[inline]
    pub fn primitive_element(&self) -> Elem {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else {
            self.digitwise(a, b, |x, y| x + y)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else {
            let p = self.p;
            self.digitwise(a, b, move |x, y| x + p - y)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(Elem::ZERO, a)
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u32, u32) -> u32) -> Elem {
        let p = self.p;
        let (mut a, mut b) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += (op(a % p, b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize]
    }

    /// Multiplies by the precomputed log of a nonzero element.
    #[inline]
    pub(crate) fn mul_by_log(&self, a: Elem, log_b: u32) -> Elem {
        if a.0 == 0 {
            return Elem::ZERO;
        }
        self.exp[(self.log[a.0 as usize] + log_b) as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    #[inline]
    pub fn exp(&self, e: u64) -> Elem {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return domain("inverse of zero");
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a.0 as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a.0 as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Polynomial product of the two representatives reduced by the modulus.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let x = self.digits(a);
        let y = self.digits(b);
        let mut prod = vec![0u32; x.len() + y.len()];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let rem = base::rem(&prod, &self.modulus, p);
        self.from_digits(&rem)
    }

    fn pow_schoolbook(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    /// Base-p digits of the representative, low to high (length m).
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    /// Scans candidates for an element of multiplicative order exactly q - 1.
    fn find_primitive_element(&self) -> Elem {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (1..self.q)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow_schoolbook(g, order / r) != Elem::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        let Some(l) = self.log(a) else {
            return domain("zero has no multiplicative order");
        };
        let order = (self.q - 1) as u64;
        Ok(order / gcd(order, l as u64))
    }
}

/// A field element carrying its field, for callers that want mismatches reported.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: Arc<Field>, index: u32) -> Result<Self> {
        let value = field.elem(index)?;
        Ok(Self { field, value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn index(&self) -> u32 {
        self.value.0
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{:?}", self.field), format!("{:?}", other.field)))
        }
    }

    fn with(&self, value: Elem) -> Self {
        Self { field: Arc::clone(&self.field), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }
}

/// Polynomials over the prime field GF(p), coefficient vectors low to high.
mod base {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2) is the inverse.
        let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub(super) fn rem(a: &[u32], divisor: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut d = divisor.to_vec();
        trim(&mut d);
        let dl = d.len();
        let lead_inv = inv_mod(d[dl - 1], p);
        while r.len() >= dl {
            let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - dl;
            for (i, &di) in d.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (c * di) % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree 1..=m/2.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut v = idx;
                for _ in 0..d {
                    g.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits q = p^m, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut m = 0;
    let mut v = q;
    while v > 1 {
        v /= p;
        m += 1;
    }
    Some((p as u32, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        let mut v = Vec::new();
        for m in 1..=6 {
            v.push(Field::binary(m).unwrap());
        }
        for m in 1..=3 {
            v.push(Field::new(3, m).unwrap());
        }
        v.push(Field::with_modulus(5, vec![2, 0, 1]).unwrap());
        v
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for (p, coeffs) in DEFAULT_MODULI {
            let f = Field::with_modulus(*p, coeffs.to_vec());
            assert!(f.is_ok(), "p={p} {coeffs:?}: {f:?}");
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(Field::with_modulus(2, vec![1, 0, 1]), Err(Error::InvalidField(_))));
        assert!(Field::with_modulus(4, vec![1, 1]).is_err());
        assert!(Field::with_modulus(2, vec![1, 1, 0]).is_err());
        assert!(Field::new(2, 17).is_err());
    }

    #[test]
    fn additive_identities() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.sub(a, a), Elem::ZERO);
            }
        }
        let f = Field::binary(6).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), Elem::ZERO);
        }
    }

    #[test]
    fn multiplicative_identities() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.mul(a, Elem::ONE), a);
                assert_eq!(f.mul(a, Elem::ZERO), Elem::ZERO);
            }
            assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
            assert!(matches!(f.inv(Elem::ZERO), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn inverse_exhaustive_gf64() {
        let f = Field::binary(6).unwrap();
        for a in f.elements().skip(1) {
            let ia = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ia), Elem::ONE);
            assert_eq!(f.inv(ia).unwrap(), a);
        }
    }

    #[test]
    fn table_powers_match_schoolbook_gf16() {
        let f = Field::binary(4).unwrap();
        let g = f.primitive_element();
        let mut powers = vec![Elem::ONE];
        for _ in 1..15 {
            let last = *powers.last().unwrap();
            powers.push(f.mul_schoolbook(last, g));
        }
        for i in 0..15 {
            for j in 0..15 {
                assert_eq!(f.mul(powers[i], powers[j]), powers[(i + j) % 15]);
                assert_eq!(f.mul(powers[i], powers[j]), f.mul_schoolbook(powers[i], powers[j]));
            }
        }
    }

    #[test]
    fn table_mul_matches_schoolbook_all_pairs() {
        for f in all_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b), "{f} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 32) {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf64() {
        let f = Field::binary(6).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_sampled_gf512() {
        use rand::{Rng, SeedableRng};
        let f = Field::binary(9).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20_000 {
            let [a, b, c] = [(); 3].map(|_| Elem(rng.gen_range(0..f.order())));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in all_fields() {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::binary(1).unwrap().primitive_element(), Elem::ONE);
        assert_eq!(Field::new(3, 1).unwrap().primitive_element(), Elem(2));
        let f = Field::binary(6).unwrap();
        let g = f.primitive_element();
        // Order by exhaustive powering.
        let mut cur = g;
        let mut order = 1;
        while cur != Elem::ONE {
            cur = f.mul_schoolbook(cur, g);
            order += 1;
        }
        assert_eq!(order, 63);
        assert_eq!(f.multiplicative_order(g).unwrap(), 63);
    }

    #[test]
    fn checked_elements_report_mismatch() {
        let f8 = Field::binary(3).unwrap().shared();
        let f16 = Field::binary(4).unwrap().shared();
        let a = FieldElement::new(f8.clone(), 3).unwrap();
        let b = FieldElement::new(f16, 3).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
        let c = FieldElement::new(f8, 5).unwrap();
        assert_eq!(a.add(&c).unwrap().index(), 6);
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap().index(), 1);
        assert!(FieldElement::new(c.field().clone(), 8).is_err());
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(FieldDescriptor::parse("2^6").unwrap().m, 6);
        let d = FieldDescriptor::parse("512").unwrap();
        assert_eq!((d.p, d.m), (2, 9));
        assert!(FieldDescriptor::parse("12").is_err());
        let f = d.build().unwrap();
        assert_eq!(f.order(), 512);
        let round: FieldDescriptor = toml::from_str(&toml::to_string(&f.descriptor()).unwrap()).unwrap();
        assert_eq!(round.build().unwrap(), f);
    }
}
