//! Exact arithmetic in `Z[q]`.
//!
//! [`PolyQ`] is a dense, normalized coefficient vector over arbitrary
//! precision integers. Degrees stay small in this engine (bounded by twice the
//! longest Weyl group element), so dense storage is the simplest exact choice.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial in `q` with integer coefficients; `coeffs[i]` multiplies `q^i`.
///
/// Invariant: the last stored coefficient is nonzero (the zero polynomial has
/// no coefficients), so derived equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyQ {
    coeffs: Vec<BigInt>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::from_big(coeffs)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::from_big(self.coeffs.iter().map(|x| x * &c).collect())
    }

    /// `self += other * q^k`, in place.
    pub fn add_shifted(&mut self, other: &PolyQ, k: usize) {
        if other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + k] += c;
        }
        self.normalize();
    }

    /// `self -= other * q^k`, in place.
    pub fn sub_shifted(&mut self, other: &PolyQ, k: usize) {
        if other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + k] -= c;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Exact value at `q = q0`, by Horner's rule.
    pub fn eval_at(&self, q0: i64) -> BigInt {
        let q0 = BigInt::from(q0);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q0 + c)
    }

    /// Exact division by two; fails if any coefficient is odd.
    pub fn halve(&self) -> Result<Self> {
        let two = BigInt::from(2);
        if self.coeffs.iter().any(|c| !(c % &two).is_zero()) {
            return Err(Error::NotDivisible(self.to_string()));
        }
        Ok(Self::from_big(self.coeffs.iter().map(|c| c / &two).collect()))
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// The Gaussian integer `1 + q + ... + q^(m-1)`; zero for `m = 0`.
pub fn gauss(m: usize) -> PolyQ {
    PolyQ::from_big(vec![BigInt::one(); m])
}

/// The binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl AddAssign<&PolyQ> for PolyQ {
    fn add_assign(&mut self, rhs: &PolyQ) {
        self.add_shifted(rhs, 0);
    }
}

impl SubAssign<&PolyQ> for PolyQ {
    fn sub_assign(&mut self, rhs: &PolyQ) {
        self.sub_shifted(rhs, 0);
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyQ::from_big(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                // Out-of-range coefficients fall back to decimal strings.
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PolyQ;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of integer coefficients in ascending degree")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<PolyQ, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    let c = match &v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| de::Error::custom("non-integer coefficient"))?,
                        serde_json::Value::String(s) => s
                            .parse::<BigInt>()
                            .map_err(|_| de::Error::custom("bad integer string"))?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    coeffs.push(c);
                }
                Ok(PolyQ::from_big(coeffs))
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_readable() {
        assert_eq!(PolyQ::from_coeffs(&[1, 0, 1]).to_string(), "q^2 + 1");
        assert_eq!(PolyQ::from_coeffs(&[-1, 2]).to_string(), "2q - 1");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = PolyQ::from_coeffs(&[1, 0, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,0,1]");
        assert_eq!(serde_json::from_str::<PolyQ>(&s).unwrap(), p);
    }
}
