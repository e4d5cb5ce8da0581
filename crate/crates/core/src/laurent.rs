//! Laurent polynomials in `v` and polynomials in `q`, with exact integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A finite sum `Σ c_k v^k` with `k ∈ ℤ`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·v^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// The involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Membership in `ℕ[v, v⁻¹]`.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Recovers `P` from `h = v^ldiff · P(v⁻²)`.
    pub fn to_q(&self, ldiff: u32) -> Result<QPoly> {
        let ldiff_i = ldiff as i64;
        let mut q = QPoly::zero();
        for (e, c) in self.iter() {
            let gap = ldiff_i - e as i64;
            if gap < 0 || gap % 2 != 0 {
                return Err(Error::ShapeViolation {
                    poly: self.to_string(),
                    ldiff,
                });
            }
            q.add_term((gap / 2) as u32, c.clone());
        }
        Ok(q)
    }

    /// JSON form: `[[exp, coeff], ...]` ascending by exponent.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(e, c)| json!([e, bigint_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Json("polynomial must be an array".into()))?;
        let mut p = Self::zero();
        for item in items {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Json(format!("bad term {item}")))?;
            let e = pair[0]
                .as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| Error::Json(format!("bad exponent {}", pair[0])))?;
            p.add_term(e, bigint_from_json(&pair[1])?);
        }
        Ok(p)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(small) => json!(small),
        None => json!(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Json(format!("bad coefficient {v}")))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, -c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_terms<I>(f: &mut fmt::Formatter<'_>, var: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, BigInt)>,
{
    let mut first = true;
    for (e, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let unit = abs.is_one();
        match e {
            0 => write!(f, "{abs}")?,
            _ => {
                if !unit {
                    write!(f, "{abs}")?;
                }
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Descending powers, e.g. `v^4 + v^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "v", self.terms.iter().rev().map(|(&e, c)| (e as i64, c.clone())))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// A polynomial `Σ c_k q^k` with `k ≥ 0`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs([1])
    }

    /// `1 + q`.
    pub fn one_plus_q() -> Self {
        Self::from_coeffs([1, 1])
    }

    /// Dense coefficients starting at `q^0`.
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as u32, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Dense coefficient list from `q^0` to the degree.
    pub fn coeffs(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `v^ldiff · P(v⁻²)`.
    pub fn to_laurent(&self, ldiff: u32) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.iter()
                .map(|(k, c)| (ldiff as i32 - 2 * k as i32, c.clone())),
        )
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(e, c)| json!([e, bigint_to_json(c)]))
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, c.clone());
        }
        out
    }
}

/// Ascending powers, e.g. `1 + q`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "q", self.terms.iter().map(|(&e, c)| (e as i64, c.clone())))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
