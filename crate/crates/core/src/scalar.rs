//! Exact arithmetic in the number field Q(√2, √3).
//!
//! Elements are stored in the basis `{1, √2, √3, √6}` with canonical
//! arbitrary-precision rational coefficients, so equality is structural.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Index of each basis element; bit 0 marks a √2 factor and bit 1 a √3 factor.
const NAMES: [&str; 4] = ["", "√2", "√3", "√6"];

/// `a + b√2 + c√3 + d√6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    coeffs: [Rational; 4],
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar {
            coeffs: [a, b, c, d],
        }
    }

    pub fn zero() -> Self {
        Scalar {
            coeffs: [
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `num / den` as an element of Q.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.coeffs[0] = q;
        s
    }

    pub fn sqrt2() -> Self {
        let mut s = Self::zero();
        s.coeffs[1] = Rational::one();
        s
    }

    pub fn sqrt3() -> Self {
        let mut s = Self::zero();
        s.coeffs[2] = Rational::one();
        s
    }

    pub fn sqrt6() -> Self {
        let mut s = Self::zero();
        s.coeffs[3] = Rational::one();
        s
    }

    /// Coefficients in the order `[1, √2, √3, √6]`.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Image under the automorphism flipping the sign of √2 (`mask & 1`) and/or √3 (`mask & 2`).
    pub fn conjugate(&self, mask: usize) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if (i & mask).count_ones() % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// The field norm down to Q: the product of all four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let n = self * &self.conjugate(1) * self.conjugate(2) * self.conjugate(3);
        debug_assert!(n.is_rational());
        n.coeffs[0].clone()
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let adjugate = self.conjugate(1) * self.conjugate(2) * self.conjugate(3);
        let norm = (self * &adjugate).coeffs[0].clone();
        Ok(adjugate.scale(&norm.recip()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c *= q;
            }
        }
        out
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Scalar::zero();
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut p = x * y;
                let shared = i & j;
                if shared & 1 != 0 {
                    p *= rat(2);
                }
                if shared & 2 != 0 {
                    p *= rat(3);
                }
                out.coeffs[i ^ j] += p;
            }
        }
        out
    }

    /// JSON text form: four rationals `"p/q"` (`q` omitted when 1).
    pub fn to_text(&self) -> [String; 4] {
        self.coeffs.clone().map(|c| rational_to_text(&c))
    }

    pub fn from_text<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::ScalarParse(format!(
                "expected 4 coefficients, found {}",
                parts.len()
            )));
        }
        let mut s = Scalar::zero();
        for (c, p) in s.coeffs.iter_mut().zip(parts) {
            *c = parse_rational(p.as_ref())?;
        }
        Ok(s)
    }
}

pub fn rational_to_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ScalarParse(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = -c.clone();
            }
        }
        out
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !r.is_zero() {
                *c += r;
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !r.is_zero() {
                *c -= r;
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Human-readable form `a + b√2 + c√3 + d√6` with zero terms elided.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let text = rational_to_text(&mag);
            match (name.is_empty(), mag.is_one(), mag.denom().is_one()) {
                (true, _, _) => f.write_str(&text)?,
                (false, true, _) => f.write_str(name)?,
                (false, false, true) => write!(f, "{text}{name}")?,
                (false, false, false) => write!(f, "({text}){name}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_text().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        Scalar::from_text(&parts).map_err(serde::de::Error::custom)
    }
}
