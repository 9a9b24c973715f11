//! Sparse polynomials in `x` (the degree-zero Zhu generator) and `c` (the
//! Virasoro central charge) with arbitrary-precision rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent pair `x^x c^c`. Ordered lexicographically, `x` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, c: 0 };

    pub fn new(x: u32, c: u32) -> Self {
        Monomial { x, c }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.c <= other.c
    }
}

/// An element of `Q[x, c]`.
///
/// Terms are kept in a `BTreeMap` so iteration order is the canonical
/// lexicographic order in `(x, c)` and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<Monomial, Rational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Coefficient::monomial(Monomial::ONE, value)
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::constant(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coefficient::constant(rat(n, d))
    }

    pub fn monomial(m: Monomial, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(m, value);
        }
        Coefficient { terms }
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Coefficient::monomial(Monomial::new(1, 0), Rational::one())
    }

    /// The central charge `c`.
    pub fn c() -> Self {
        Coefficient::monomial(Monomial::new(0, 1), Rational::one())
    }

    pub fn x_pow(k: u32) -> Self {
        Coefficient::monomial(Monomial::new(k, 0), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|v| v.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The value of a constant polynomial (`Some(0)` is never returned for
    /// the zero polynomial; callers check `is_zero` first).
    pub fn as_constant(&self) -> Option<&Rational> {
        match self.terms.len() {
            1 => self.terms.get(&Monomial::ONE),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains_x(&self) -> bool {
        self.terms.keys().any(|m| m.x > 0)
    }

    pub fn contains_c(&self) -> bool {
        self.terms.keys().any(|m| m.c > 0)
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Leading term in lex order with `x > c`.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, value: Rational) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Coefficient {
        if s.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(m, v)| (*m, v * s)).collect(),
        }
    }

    /// Multiply by the monomial `x^dx c^dc`.
    pub fn shift(&self, dx: u32, dc: u32) -> Coefficient {
        Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.x + dx, m.c + dc), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Coefficient {
        let mut acc = Coefficient::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by a single divisor, lex order `x > c`.
    ///
    /// The remainder is zero exactly when `divisor` divides `self`, since a
    /// single polynomial is a Gröbner basis of the ideal it generates.
    pub fn div_rem(&self, divisor: &Coefficient) -> (Coefficient, Coefficient) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lm, lc) = divisor.leading_term().map(|(m, v)| (*m, v.clone())).unwrap();
        let mut quotient = Coefficient::zero();
        let mut remainder = Coefficient::zero();
        let mut rest = self.clone();
        while let Some((m, v)) = rest.leading_term().map(|(m, v)| (*m, v.clone())) {
            if lm.divides(&m) {
                let q = Coefficient::monomial(Monomial::new(m.x - lm.x, m.c - lm.c), &v / &lc);
                rest = &rest - &(&q * divisor);
                quotient += &q;
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, v);
            }
        }
        (quotient, remainder)
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Coefficient) -> Option<Coefficient> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(d) = divisor.as_constant() {
            return Some(self.scale(&d.recip()));
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, m| Monomial::new(acc.x.min(m.x), acc.c.min(m.c)))
    }

    /// Rational `q`, carrying the sign of the leading coefficient, such that
    /// `self / q` has coprime integer coefficients.
    pub fn rational_content(&self) -> Rational {
        let Some((_, lead)) = self.leading_term() else {
            return Rational::one();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for v in self.terms.values() {
            num_gcd = num_gcd.gcd(v.numer());
            den_lcm = den_lcm.lcm(v.denom());
        }
        let q = Rational::new(num_gcd, den_lcm);
        if lead.is_negative() {
            -q
        } else {
            q
        }
    }

    /// `(content, primitive part)` where content is a rational times a
    /// monomial. This is the cheap normalization used during elimination;
    /// it does not extract nontrivial polynomial factors.
    pub fn split_content(&self) -> (Coefficient, Coefficient) {
        if self.is_zero() {
            return (Coefficient::one(), Coefficient::zero());
        }
        let q = self.rational_content();
        let m = self.monomial_content();
        let inv = q.recip();
        let prim = Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (Monomial::new(t.x - m.x, t.c - m.c), v * &inv))
                .collect(),
        };
        (Coefficient::monomial(m, q), prim)
    }

    /// Substitute values for `x` and/or `c`.
    pub fn substitute(&self, x: Option<&Coefficient>, c: Option<&Coefficient>) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m, v) in &self.terms {
            let mut term = Coefficient::constant(v.clone());
            match x {
                Some(val) => term = &term * &val.pow(m.x),
                None => term = term.shift(m.x, 0),
            }
            match c {
                Some(val) => term = &term * &val.pow(m.c),
                None => term = term.shift(0, m.c),
            }
            out += &term;
        }
        out
    }

    /// Total size in bits of numerators and denominators; used to prefer
    /// small pivots.
    pub fn weight(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, v)| v.numer().bits() + v.denom().bits() + u64::from(m.x + m.c) * 8 + 1)
            .sum()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<Rational> for Coefficient {
    fn from(q: Rational) -> Self {
        Coefficient::constant(q)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(mut self, rhs: Coefficient) -> Coefficient {
        self += &rhs;
        self
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        for (m, v) in &rhs.terms {
            self.add_term(*m, v.clone());
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        for (m, v) in &rhs.terms {
            self.add_term(*m, -v.clone());
        }
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(mut self, rhs: Coefficient) -> Coefficient {
        self -= &rhs;
        self
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(m, v)| (*m, -v.clone())).collect(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        if let Some(k) = self.as_constant() {
            return rhs.scale(k);
        }
        if let Some(k) = rhs.as_constant() {
            return self.scale(k);
        }
        let mut out = Coefficient::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.c + mb.c), va * vb);
            }
        }
        out
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x", m.x), ("c", m.c)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        for (i, (m, v)) in self.terms.iter().rev().enumerate() {
            let negative = v.is_negative();
            let abs = v.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: u32,
    c: u32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct CoefficientJson {
    terms: Vec<TermJson>,
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoefficientJson {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| TermJson {
                    x: m.x,
                    c: m.c,
                    num: v.numer().to_string(),
                    den: v.denom().to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CoefficientJson::deserialize(deserializer)?;
        let mut out = Coefficient::zero();
        for t in raw.terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            out.add_term(Monomial::new(t.x, t.c), Rational::new(num, den));
        }
        Ok(out)
    }
}
