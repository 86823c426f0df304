//! Exact rational scalar used everywhere in the crate.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Pow, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational number. Displays as `p` or `p/q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(Rational);

impl Q {
    pub fn zero() -> Self {
        Q(Rational::ZERO)
    }

    pub fn one() -> Self {
        Q(Rational::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Q(Rational::from(n))
    }

    /// `n/d`; panics on `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Q(Rational::from_signeds(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Rational::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.0 == Rational::ONE
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Rational::ZERO
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Q((&self.0).reciprocal())
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn pow(&self, e: i64) -> Self {
        if e >= 0 {
            Q((&self.0).pow(e as u64))
        } else {
            self.recip().pow(-e)
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `(-1)^k` as a rational.
    pub fn sign(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Q::one()
        } else {
            Q::from_int(-1)
        }
    }

    pub fn factorial(n: u64) -> Self {
        (1..=n).fold(Q::one(), |acc, k| acc * Q::from_int(k as i64))
    }

    pub fn inner(&self) -> &Rational {
        &self.0
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::from_int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Self {
        Q::from_int(n as i64)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Q {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        // malachite accepts "p" and "p/q" but not a zero denominator; guard anyway
        match Rational::from_str(t) {
            Ok(r) => Ok(Q(r)),
            Err(_) => Err(Error::Parse(format!("not a rational: {s:?}"))),
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q(self.0.$m(o.0))
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q(self.0.$m(&o.0))
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q((&self.0).$m(o.0))
            }
        }
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q((&self.0).$m(&o.0))
            }
        }
        impl $atr<Q> for Q {
            fn $am(&mut self, o: Q) {
                self.0.$am(o.0)
            }
        }
        impl $atr<&Q> for Q {
            fn $am(&mut self, o: &Q) {
                self.0.$am(&o.0)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(it: I) -> Q {
        it.fold(Q::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Q> for Q {
    fn sum<I: Iterator<Item = &'a Q>>(it: I) -> Q {
        it.fold(Q::zero(), |a, b| a + b)
    }
}

impl Product for Q {
    fn product<I: Iterator<Item = Q>>(it: I) -> Q {
        it.fold(Q::one(), |a, b| a * b)
    }
}
