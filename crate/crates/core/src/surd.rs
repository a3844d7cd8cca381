//! Exact elements `a + b*sqrt(d)` of a real quadratic field, plus the
//! scalar abstraction that lets the norm formulas run over either plain
//! rationals or surds.

use crate::{rat, Rat};
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact scalar arithmetic shared by `Rat` and `Surd`.
pub trait Scalar: Clone + PartialEq + fmt::Display {
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;

    fn zero() -> Self {
        Self::from_rat(&<Rat as Zero>::zero())
    }
    fn scale(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r))
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

/// `a + b*sqrt(d)` with `d` a squarefree positive integer; `d = 1` forces
/// `b = 0` (plain rational).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surd {
    pub a: Rat,
    pub b: Rat,
    pub d: i64,
}

/// Strip the square part: returns (s, d) with `n = s^2 * d`, d squarefree.
pub fn squarefree_decompose(n: i64) -> (i64, i64) {
    assert!(n >= 0);
    if n == 0 {
        return (0, 1);
    }
    let mut s = 1i64;
    let mut d = n;
    let mut f = 2i64;
    while f * f <= d {
        while d % (f * f) == 0 {
            d /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, d)
}

impl Surd {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        let (s, d0) = squarefree_decompose(d);
        let (mut a, mut b, mut d) = (a, b * rat(s), d0);
        if d == 1 {
            // sqrt(1) = 1: fold into the rational part.
            a += std::mem::take(&mut b);
        } else if Zero::is_zero(&b) {
            d = 1;
        }
        Surd { a, b, d }
    }

    pub fn rational(a: Rat) -> Self {
        Surd {
            a,
            b: <Rat as Zero>::zero(),
            d: 1,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(rat(n))
    }

    /// `a + b*sqrt(d)` from integer parts.
    pub fn from_parts(a: i64, b: i64, d: i64) -> Self {
        Surd::new(rat(a), rat(b), d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn conjugate(&self) -> Self {
        Surd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Panics on incompatible radicands; use `compatible` to check first.
    fn join(&self, other: &Self) -> i64 {
        if self.d == other.d || other.d == 1 {
            self.d
        } else if self.d == 1 {
            other.d
        } else {
            panic!("incompatible surd fields sqrt({}) and sqrt({})", self.d, other.d);
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.d == other.d || self.d == 1 || other.d == 1
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rat| -> f64 {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * (self.d as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else if Signed::is_negative(&self.b) {
            write!(f, "{}-{}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Scalar for Surd {
    fn from_rat(r: &Rat) -> Self {
        Surd::rational(r.clone())
    }

    fn add(&self, other: &Self) -> Self {
        let d = self.join(other);
        Surd::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    fn sub(&self, other: &Self) -> Self {
        let d = self.join(other);
        Surd::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    fn mul(&self, other: &Self) -> Self {
        let d = self.join(other);
        let a = &self.a * &other.a + &self.b * &other.b * rat(d);
        let b = &self.a * &other.b + &self.b * &other.a;
        Surd::new(a, b, d)
    }

    fn div(&self, other: &Self) -> Self {
        let d = self.join(other);
        // Multiply by the conjugate of the divisor.
        let norm = &other.a * &other.a - &other.b * &other.b * rat(d);
        assert!(!Zero::is_zero(&norm), "division by zero surd");
        let a = (&self.a * &other.a - &self.b * &other.b * rat(d)) / &norm;
        let b = (&self.b * &other.a - &self.a * &other.b) / &norm;
        Surd::new(a, b, d)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    fn is_positive(&self) -> bool {
        let (ap, bp) = (Signed::is_positive(&self.a), Signed::is_positive(&self.b));
        let (az, bz) = (Zero::is_zero(&self.a), Zero::is_zero(&self.b));
        if bz {
            return ap;
        }
        if az {
            return bp;
        }
        if ap && bp {
            return true;
        }
        if !ap && !bp {
            return false;
        }
        // Mixed signs: compare a^2 with b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d);
        if ap {
            a2 > b2d
        } else {
            b2d > a2
        }
    }
}
