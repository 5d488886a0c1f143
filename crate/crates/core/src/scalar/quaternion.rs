use std::cmp::Ordering;

use num::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A rational quaternion a + b·i + c·j + d·k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm(&self) -> Rational {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn neg(&self) -> Self {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn scale(&self, q: Rational) -> Self {
        Quaternion::new(self.a * q, self.b * q, self.c * q, self.d * q)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(self.norm().recip()))
    }

    pub fn coords(&self) -> [Rational; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Lexicographic on (a, b, c, d), larger coordinates first.
    pub fn cmp_canonical(&self, o: &Self) -> Ordering {
        o.coords().cmp(&self.coords())
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let m1 = Quaternion::one().neg();
        assert_eq!(i.mul(&i), m1);
        assert_eq!(j.mul(&j), m1);
        assert_eq!(k.mul(&k), m1);
        assert_eq!(i.mul(&j).mul(&k), m1);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
    }

    #[test]
    fn inverse_and_norm() {
        let q = Quaternion::from_ints(1, 2, -1, 3);
        assert_eq!(q.norm(), Rational::from_integer(15));
        assert!(q.mul(&q.try_inv().unwrap()).is_one());
        assert_eq!(q.mul(&q.conj()), Quaternion::new(q.norm(), 0.into(), 0.into(), 0.into()));
    }
}
