//! Exact arithmetic in the quadratic field Q(√3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The number `a + b√3` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn sqrt3() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::one() }
    }

    /// `n/d` as a rational scalar. Panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// `(n/d)·√3`. Panics when `d == 0`.
    pub fn ratio_sqrt3(n: i64, d: i64) -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::new(n.into(), d.into()) }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Galois conjugate `a − b√3`.
    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(3.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar { a: &self.a / &n, b: -(&self.b / &n) })
    }

    /// Sign of the real number `a + b√3` as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(3.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * 3f64.sqrt()
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let three = BigRational::from_integer(3.into());
        Scalar {
            a: &self.a * &rhs.a + three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.b.is_zero() {
            return Scalar { a: &self.a / &rhs.a, b: &self.b / &rhs.a };
        }
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_sqrt3(f, &self.b),
            (false, false) => {
                write!(f, "{}", self.a)?;
                if self.b.is_positive() {
                    write!(f, "+")?;
                }
                write_sqrt3(f, &self.b)
            }
        }
    }
}

fn write_sqrt3(f: &mut fmt::Formatter<'_>, b: &BigRational) -> fmt::Result {
    let n = b.numer();
    let d = b.denom();
    let lead = if n.is_one() {
        String::new()
    } else if *n == -BigInt::one() {
        "-".to_string()
    } else {
        n.to_string()
    };
    if d.is_one() {
        write!(f, "{lead}√3")
    } else {
        write!(f, "{lead}√3/{d}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    a: String,
    b: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { a: self.a.to_string(), b: self.b.to_string() }.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarInput {
    Pair(ScalarRepr),
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ScalarInput::deserialize(d)? {
            ScalarInput::Pair(r) => {
                let a = parse_rational(&r.a).map_err(D::Error::custom)?;
                let b = parse_rational(&r.b).map_err(D::Error::custom)?;
                Ok(Scalar::new(a, b))
            }
            ScalarInput::Int(n) => Ok(Scalar::from(n)),
            ScalarInput::Text(t) => parse_rational(&t).map(Scalar::from_rational).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_squares_to_three() {
        let r = Scalar::sqrt3();
        assert_eq!(&r * &r, Scalar::from(3));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = Scalar::new(BigRational::from_integer(2.into()), BigRational::from_integer(1.into()));
        // (2+√3)(2−√3) = 1
        assert_eq!(x.inv().unwrap(), Scalar::new(2.into_rat(), (-1).into_rat()));
        assert!(Scalar::zero().inv().is_none());
    }

    trait IntoRat {
        fn into_rat(self) -> BigRational;
    }
    impl IntoRat for i64 {
        fn into_rat(self) -> BigRational {
            BigRational::from_integer(self.into())
        }
    }

    #[test]
    fn sign_of_mixed_values() {
        // 2 − √3 > 0, 1 − √3 < 0, −7/4 + √3 < 0
        assert_eq!(Scalar::new(2.into_rat(), (-1).into_rat()).signum(), 1);
        assert_eq!(Scalar::new(1.into_rat(), (-1).into_rat()).signum(), -1);
        assert_eq!((Scalar::ratio(-7, 4) + Scalar::sqrt3()).signum(), -1);
        assert!(Scalar::ratio(1, 2) < Scalar::ratio_sqrt3(1, 2));
    }

    #[test]
    fn json_round_trip() {
        let x = Scalar::ratio(-1, 2) + Scalar::ratio_sqrt3(1, 2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-1/2","b":"1/2"}"#);
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let i: Scalar = serde_json::from_str("3").unwrap();
        assert_eq!(i, Scalar::from(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ratio_sqrt3(1, 2).to_string(), "√3/2");
        assert_eq!((Scalar::ratio(1, 3) - Scalar::ratio_sqrt3(2, 3)).to_string(), "1/3-2√3/3");
    }
}
