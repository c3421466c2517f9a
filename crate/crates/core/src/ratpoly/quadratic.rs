use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, PolyError, Rational, Scalar};

const MAX_RADICAND: u64 = 1_000_000_000_000;

/// Exact real number `a + b*sqrt(d)` in a real quadratic field.
///
/// `d` is a squarefree integer >= 2, or `d == 1` exactly when `b == 0`.
/// Operands must come from the same field; mixing two different radicands
/// is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Real {
    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    /// `a + b*sqrt(d)`; `d` must be squarefree.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        Self { a, b, d }.normalized()
    }

    /// Exact non-negative square root of a non-negative rational.
    pub fn sqrt(q: &Rational) -> Result<Self, PolyError> {
        if q.is_negative() {
            return Err(PolyError::NegativeSquare(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(n/m) = sqrt(n*m)/m
        let prod: BigInt = q.numer() * q.denom();
        let prod = prod
            .to_u64()
            .filter(|p| *p <= MAX_RADICAND)
            .ok_or_else(|| PolyError::RadicandTooLarge(q.to_string()))?;
        let (square, free) = split_square(prod);
        let coeff = Rational::new(BigInt::from(square), q.denom().clone());
        if free == 1 {
            Ok(Self::rational(coeff))
        } else {
            Ok(Self::new(Rational::zero(), coeff, free))
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand, 1 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    fn common(&self, other: &Real) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed radicands sqrt({x}) and sqrt({y})"),
        }
    }

    /// Checks that two values live in a common quadratic field.
    pub fn compatible(&self, other: &Real) -> Result<(), PolyError> {
        match (self.d, other.d) {
            (1, _) | (_, 1) => Ok(()),
            (x, y) if x == y => Ok(()),
            (x, y) => Err(PolyError::MixedRadicands(x, y)),
        }
    }

    fn conj_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }
}

fn split_square(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut count = 0;
        while n.is_multiple_of(p) {
            n /= p;
            count += 1;
        }
        square *= p.pow(count / 2);
        if count % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let r = n.sqrt();
        if r * r == n {
            square *= r;
        } else {
            free *= n;
        }
    }
    (square, free)
}

impl Zero for Real {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Real {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        if self.d == 1 && rhs.d == 1 {
            return Real::rational(self.a + rhs.a);
        }
        let d = self.common(&rhs);
        Real::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        if self.d == 1 && rhs.d == 1 {
            return Real::rational(self.a - rhs.a);
        }
        let d = self.common(&rhs);
        Real::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        match (self.d, rhs.d) {
            (1, 1) => return Real::rational(self.a * rhs.a),
            (1, d) => return Real::new(&self.a * rhs.a, self.a * rhs.b, d),
            (d, 1) => return Real::new(&rhs.a * self.a, rhs.a * self.b, d),
            _ => {}
        }
        let d = self.common(&rhs);
        let dq = Rational::from_integer(d.into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Real::new(a, b, d)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::new(-self.a, -self.b, self.d)
    }
}

impl Scalar for Real {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

impl Field for Real {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.conj_norm();
        Some(Real::new(&self.a / &norm, -&self.b / &norm, self.d))
    }

    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (x, Ordering::Equal) | (Ordering::Equal, x) => x,
            (x, y) if x == y => x,
            // opposite signs: the larger magnitude wins
            (x, y) => {
                if self.conj_norm().sign() == Ordering::Greater {
                    x
                } else {
                    y
                }
            }
        }
    }

    fn to_f64(&self) -> f64 {
        let a = ToPrimitive::to_f64(&self.a).unwrap_or(f64::NAN);
        let b = ToPrimitive::to_f64(&self.b).unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

impl From<Rational> for Real {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.b).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        if self.a.is_zero() {
            write!(f, "{root}")
        } else if let Some(abs) = root.strip_prefix('-') {
            write!(f, "{} - {}", self.a, abs)
        } else {
            write!(f, "{} + {}", self.a, root)
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({self})")
    }
}
