//! Exact scalars: cyclotomic rationals and rational quaternions.

mod cyclotomic;
mod quaternion;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use cyclotomic::{cyclotomic_polynomial, join_conductors, totient, Cyclotomic, DEFAULT_CONDUCTOR_LIMIT};
pub use quaternion::Quaternion;

use crate::error::{Error, Result};

pub type Rational = num::rational::Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Cyclotomic,
    Quaternion,
}

impl ScalarKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalarKind::Cyclotomic => "cyclotomic",
            ScalarKind::Quaternion => "quaternion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Cyc(Cyclotomic),
    Quat(Quaternion),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Inv,
    Conj,
}

/// Checked scalar arithmetic with an explicit conductor bound.
pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: Option<&Scalar>, conductor_limit: u32) -> Result<Scalar> {
    let need_b = || b.ok_or_else(|| Error::ShapeError("binary operation needs two operands".into()));
    match op {
        ScalarOp::Add => a.try_add(need_b()?, conductor_limit),
        ScalarOp::Mul => a.try_mul(need_b()?, conductor_limit),
        ScalarOp::Inv => a.try_inv(),
        ScalarOp::Conj => Ok(a.conj()),
    }
}

impl Scalar {
    pub fn rational(conductor: u32, q: Rational) -> Self {
        Scalar::Cyc(Cyclotomic::rational(conductor, q))
    }

    pub fn int(conductor: u32, n: i64) -> Self {
        Self::rational(conductor, Rational::from_integer(n))
    }

    pub fn root_of_unity(conductor: u32, m: u32, k: i64) -> Self {
        Scalar::Cyc(Cyclotomic::root_of_unity(conductor, m, k))
    }

    pub fn quat(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar::Quat(Quaternion::from_ints(a, b, c, d))
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Cyc(_) => ScalarKind::Cyclotomic,
            Scalar::Quat(_) => ScalarKind::Quaternion,
        }
    }

    /// Conductor of a cyclotomic scalar; quaternions report 1.
    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Cyc(c) => c.conductor(),
            Scalar::Quat(_) => 1,
        }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(Cyclotomic::zero(c.conductor())),
            Scalar::Quat(_) => Scalar::Quat(Quaternion::zero()),
        }
    }

    pub fn one_like(&self) -> Self {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(Cyclotomic::one(c.conductor())),
            Scalar::Quat(_) => Scalar::Quat(Quaternion::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::Quat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Cyc(c) => c.is_one(),
            Scalar::Quat(q) => q.is_one(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Cyc(c) => c.is_real(),
            Scalar::Quat(q) => q.is_real(),
        }
    }

    pub fn try_add(&self, other: &Scalar, limit: u32) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Ok(Scalar::Cyc(a.try_add(b, limit)?)),
            (Scalar::Quat(a), Scalar::Quat(b)) => Ok(Scalar::Quat(a.add(b))),
            _ => Err(Error::UnsupportedScalarKind("mixed")),
        }
    }

    pub fn try_mul(&self, other: &Scalar, limit: u32) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Ok(Scalar::Cyc(a.try_mul(b, limit)?)),
            (Scalar::Quat(a), Scalar::Quat(b)) => Ok(Scalar::Quat(a.mul(b))),
            _ => Err(Error::UnsupportedScalarKind("mixed")),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Cyc(c) => Ok(Scalar::Cyc(c.try_inv()?)),
            Scalar::Quat(q) => Ok(Scalar::Quat(q.try_inv()?)),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(c.conj()),
            Scalar::Quat(q) => Scalar::Quat(q.conj()),
        }
    }

    pub fn scale(&self, q: Rational) -> Scalar {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(c.scale(q)),
            Scalar::Quat(x) => Scalar::Quat(x.scale(q)),
        }
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    /// Rational coordinates: power-basis coefficients at `conductor`, or (a,b,c,d).
    pub fn coords(&self, conductor: u32) -> Vec<Rational> {
        match self {
            Scalar::Cyc(c) => c.lift(conductor).coeffs().to_vec(),
            Scalar::Quat(q) => q.coords().to_vec(),
        }
    }

    pub fn from_coords(kind: ScalarKind, conductor: u32, coords: Vec<Rational>) -> Scalar {
        match kind {
            ScalarKind::Cyclotomic => Scalar::Cyc(Cyclotomic::from_coeffs(conductor, coords)),
            ScalarKind::Quaternion => Scalar::Quat(Quaternion::new(coords[0], coords[1], coords[2], coords[3])),
        }
    }

    /// Appends a hashable canonical encoding at the given conductor.
    pub fn push_key(&self, conductor: u32, out: &mut Vec<i64>) {
        match self {
            Scalar::Cyc(c) => {
                if c.is_zero() {
                    out.push(0);
                    return;
                }
                out.push(1);
                for q in c.lift(conductor).coeffs() {
                    out.push(*q.numer());
                    out.push(*q.denom());
                }
            }
            Scalar::Quat(q) => {
                for x in q.coords() {
                    out.push(*x.numer());
                    out.push(*x.denom());
                }
            }
        }
    }

    pub fn cmp_canonical(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Cyc(a), Scalar::Cyc(b)) => a.cmp_canonical(b),
            (Scalar::Quat(a), Scalar::Quat(b)) => a.cmp_canonical(b),
            (Scalar::Cyc(_), Scalar::Quat(_)) => Ordering::Less,
            (Scalar::Quat(_), Scalar::Cyc(_)) => Ordering::Greater,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs, u32::MAX).expect("scalar kinds must agree")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs, u32::MAX).expect("scalar kinds must agree")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::Quat(q) => Scalar::Quat(q.neg()),
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyc(c) => {
                if let Some(q) = c.as_rational() {
                    return write!(f, "{}", q);
                }
                let terms: Vec<String> = c
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| **q != Rational::from_integer(0))
                    .map(|(k, q)| format!("({})z{}^{}", fmt_rational(q), c.conductor(), k))
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
            Scalar::Quat(q) => write!(f, "({}, {}, {}, {})", q.a, q.b, q.c, q.d),
        }
    }
}
