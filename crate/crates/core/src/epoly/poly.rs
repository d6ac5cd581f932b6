use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent pair `(p, q)` of the monomial `u^p v^q`.
pub type Monomial = (u32, u32);

/// Polynomial in `u`, `v` with exact rational coefficients. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, p: u32, q: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((p, q), c);
        }
        BivariatePolynomial { terms }
    }

    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// The monomial `(uv)^k`.
    pub fn uv_pow(k: u32) -> Self {
        Self::monomial(BigRational::one(), k, k)
    }

    /// Builds from `(p, q, coeff)` triples, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, BigRational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (p, q, c) in terms {
            out.add_term((p, q), c);
        }
        out
    }

    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(p, q, c)| (p, q, BigRational::from_integer(c.into()))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: u32, q: u32) -> BigRational {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in lexicographic `(p, q)` order.
    pub fn leading_term(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(p, q)| p + q).max()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// Multiplies by the monomial `u^p v^q`.
    pub fn shift(&self, p: u32, q: u32) -> Self {
        BivariatePolynomial { terms: self.terms.iter().map(|(&(a, b), c)| ((a + p, b + q), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `E(u^k, v^k)`.
    pub fn substitute_powers(&self, k: u32) -> Self {
        BivariatePolynomial { terms: self.terms.iter().map(|(&(p, q), c)| ((p * k, q * k), c.clone())).collect() }
    }

    pub fn evaluate(&self, u: &BigRational, v: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(p, q), c)| c * pow_rational(u, p) * pow_rational(v, q))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Exact quotient `self / divisor`, or an error if the division leaves a
    /// remainder.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let Some((lead_m, lead_c)) = divisor.leading_term() else {
            return Err(Error::InexactDivision("division by zero polynomial".into()));
        };
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(((p, q), c)) = rem.leading_term() {
            if p < lead_m.0 || q < lead_m.1 {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            }
            let t = Self::monomial(c / &lead_c, p - lead_m.0, q - lead_m.1);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Ok(quotient)
    }

    /// Canonical text form: `c*u^p*v^q` terms in increasing `(p, q)` order
    /// joined by ` + `; the zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(&(p, q), c)| format!("{}*u^{p}*v^{q}", fmt_rational(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let bad = || Error::InvalidArgument(format!("malformed term '{term}'"));
            let mut parts = term.trim().split('*');
            let c = parse_rational(parts.next().ok_or_else(bad)?).ok_or_else(bad)?;
            let p = parts.next().and_then(|x| x.strip_prefix("u^")).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            let q = parts.next().and_then(|x| x.strip_prefix("v^")).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            out.add_term((p, q), c);
        }
        Ok(out)
    }
}

fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// `num/den` with the denominator always present.
pub fn fmt_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Accepts `n` or `n/d` (`d ≠ 0`).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                *terms.entry((a + c, b + d)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BivariatePolynomial { terms }
    }
}

impl std::iter::Sum for BivariatePolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Human form, highest terms first, e.g. `u^2v^2 + 4uv + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(p, q), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match (p, q) {
                (0, 0) => String::new(),
                _ => {
                    let var = |name: &str, e: u32| match e {
                        0 => String::new(),
                        1 => name.to_string(),
                        e => format!("{name}^{e}"),
                    };
                    format!("{}{}", var("u", p), var("v", q))
                }
            };
            if mono.is_empty() || !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({}/{})", abs.numer(), abs.denom())?;
                }
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    p: u32,
    q: u32,
    coeff: String,
}

/// JSON form: `[{"p": .., "q": .., "coeff": "num/den"}, ...]` sorted by `(p, q)`.
impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(p, q), c) in &self.terms {
            seq.serialize_element(&TermRecord { p, q, coeff: fmt_rational(c) })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut out = Self::zero();
        for r in records {
            let c = parse_rational(&r.coeff).ok_or_else(|| de::Error::custom(format!("bad coefficient {}", r.coeff)))?;
            out.add_term((r.p, r.q), c);
        }
        Ok(out)
    }
}

/// Integer value of a polynomial known to be integral at the point, for
/// reporting.
pub fn integer_value(p: &BivariatePolynomial, u: i64, v: i64) -> Option<BigInt> {
    let x = p.evaluate(&BigRational::from_integer(u.into()), &BigRational::from_integer(v.into()));
    x.is_integer().then(|| x.to_integer())
}
