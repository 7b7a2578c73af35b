//! Univariate and sparse bivariate polynomials over a [`Field`], the
//! (1, w)-weighted monomial order, and shifted (Hasse) coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, usage, Result};
use crate::galois::{Elem, Field};

/// Exponent pair `(i, j)` standing for x^i y^j.
pub type Monomial = (u32, u32);

/// Univariate polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// x
    pub fn x() -> Self {
        Self::from_coeffs(vec![Elem::ZERO, Elem::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Self> {
        let coeffs = indices.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, field: &Field) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Long division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self, field: &Field) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return domain("division by the zero polynomial");
        };
        let lead_inv = field.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = field.mul(rem[top], lead_inv);
            let shift = top - dd;
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(rem[shift + i], field.mul(c, d));
            }
            rem.pop();
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| term(*c, i as u32, 0))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn term(c: Elem, i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    if c != Elem::ONE || (i == 0 && j == 0) {
        parts.push(c.to_string());
    }
    match i {
        0 => {}
        1 => parts.push("x".into()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("y".into()),
        _ => parts.push(format!("y^{j}")),
    }
    parts.join("*")
}

/// The (1, w)-weighted degree order on monomials x^i y^j: compare
/// i + j*w first, then the y-exponent.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WeightedOrder {
    w: u32,
}

impl WeightedOrder {
    pub fn new(w: u32) -> Result<Self> {
        if w == 0 {
            return usage("weighted order requires w >= 1");
        }
        Ok(Self { w })
    }

    pub fn weight(&self) -> u32 {
        self.w
    }

    #[inline]
    pub fn weighted_degree(&self, (i, j): Monomial) -> u64 {
        i as u64 + j as u64 * self.w as u64
    }

    #[inline]
    pub fn compare(&self, a: Monomial, b: Monomial) -> Ordering {
        self.weighted_degree(a).cmp(&self.weighted_degree(b)).then(a.1.cmp(&b.1))
    }

    /// All monomials of weighted degree at most `cap`, ascending.
    pub fn monomials_up_to(&self, cap: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut j = 0u64;
        while j * self.w as u64 <= cap {
            for i in 0..=(cap - j * self.w as u64) {
                out.push((i as u32, j as u32));
            }
            j += 1;
        }
        out.sort_by(|a, b| self.compare(*a, *b));
        out
    }
}

/// Sparse bivariate polynomial; only nonzero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Elem>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([((0, 0), Elem::ONE)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Self {
        Self { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// y - h(x)
    pub fn y_minus(h: &UniPoly, field: &Field) -> Self {
        let mut terms: Vec<_> = h.coeffs().iter().enumerate().map(|(i, &c)| ((i as u32, 0), field.neg(c))).collect();
        terms.push(((0, 1), Elem::ONE));
        Self::from_terms(terms)
    }

    /// Builds from y-coefficient rows: `rows[j]` is the coefficient of y^j.
    pub fn from_rows(rows: &[UniPoly]) -> Self {
        Self::from_terms(
            rows.iter()
                .enumerate()
                .flat_map(|(j, row)| row.coeffs().iter().enumerate().map(move |(i, &c)| ((i as u32, j as u32), c))),
        )
    }

    /// Coefficient rows indexed by y-power.
    pub fn rows(&self) -> Vec<UniPoly> {
        let Some(ydeg) = self.y_degree() else {
            return Vec::new();
        };
        let mut rows = vec![Vec::new(); ydeg as usize + 1];
        for (&(i, j), &c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Elem::ZERO);
            }
            row[i as usize] = c;
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Elem)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> Elem {
        self.terms.get(&mono).copied().unwrap_or(Elem::ZERO)
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1).max()
    }

    pub fn leading_monomial(&self, order: &WeightedOrder) -> Option<Monomial> {
        self.terms.keys().copied().max_by(|a, b| order.compare(*a, *b))
    }

    pub fn weighted_degree(&self, order: &WeightedOrder) -> Option<u64> {
        self.leading_monomial(order).map(|m| order.weighted_degree(m))
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let mut terms = self.terms.clone();
        for (&m, &c) in &other.terms {
            let e = terms.entry(m).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn scale(&self, c: Elem, field: &Field) -> Self {
        Self::from_terms(self.terms().map(|(m, a)| (m, field.mul(a, c))))
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        let mut terms: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (&(i1, j1), &a) in &self.terms {
            for (&(i2, j2), &b) in &other.terms {
                let e = terms.entry((i1 + i2, j1 + j2)).or_insert(Elem::ZERO);
                *e = field.add(*e, field.mul(a, b));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn eval(&self, field: &Field, x: Elem, y: Elem) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, (&(i, j), &c)| {
            let t = field.mul(c, field.mul(field.pow(x, i as u64), field.pow(y, j as u64)));
            field.add(acc, t)
        })
    }

    /// Coefficient of x^r y^s in f(x + a, y + b).
    pub fn hasse_coefficient(&self, field: &Field, (a, b): (Elem, Elem), (r, s): Monomial) -> Elem {
        let p = field.characteristic() as u64;
        let mut acc = Elem::ZERO;
        for (&(i, j), &c) in self.terms.range((r, s)..) {
            if i < r || j < s {
                continue;
            }
            let binom = binomial_mod(i as u64, r as u64, p) * binomial_mod(j as u64, s as u64, p) % p;
            if binom == 0 {
                continue;
            }
            let t = field.mul(
                field.mul(c, field.from_int(binom)),
                field.mul(field.pow(a, (i - r) as u64), field.pow(b, (j - s) as u64)),
            );
            acc = field.add(acc, t);
        }
        acc
    }

    /// Order of vanishing at a point: the least r + s with a nonzero shifted
    /// coefficient. Zero exactly when f does not vanish there.
    pub fn multiplicity_at(&self, field: &Field, point: (Elem, Elem)) -> Result<u32> {
        let Some(total) = self.total_degree() else {
            return domain("the zero polynomial vanishes to every order");
        };
        for d in 0..=total {
            if (0..=d).any(|r| !self.hasse_coefficient(field, point, (r, d - r)).is_zero()) {
                return Ok(d);
            }
        }
        unreachable!("a shift of a nonzero polynomial is nonzero")
    }

    /// The univariate polynomial f(x, h(x)).
    pub fn evaluate_y(&self, h: &UniPoly, field: &Field) -> UniPoly {
        self.rows().iter().rev().fold(UniPoly::zero(), |acc, row| acc.mul(h, field).add(row, field))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms.iter().rev().map(|(&(i, j), &c)| term(c, i, j)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// C(n, r) mod p by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut r: u64, p: u64) -> u64 {
    if p == 2 {
        return ((n & r) == r) as u64;
    }
    let mut acc = 1u64;
    while r > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, rd) % p;
        n /= p;
        r /= p;
    }
    acc
}

fn small_binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
