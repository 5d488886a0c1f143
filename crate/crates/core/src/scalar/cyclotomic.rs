use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::integer::{gcd, lcm};
use num::{One, Zero};
use smallvec::{smallvec, SmallVec};

use super::Rational;
use crate::bareiss;
use crate::error::{Error, Result};

pub const DEFAULT_CONDUCTOR_LIMIT: u32 = 64;

type Coeffs = SmallVec<[Rational; 8]>;

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        let dd = div.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = num[k + dd];
            quot[k] = c;
            for (j, &dj) in div.iter().enumerate() {
                num[k + j] -= c * dj;
            }
        }
        num = quot;
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of ℚ(ζ_N) in the power basis of ζ_N, reduced modulo Φ_N.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Coeffs,
}

fn reduce(mut p: Vec<Rational>, conductor: u32) -> Coeffs {
    let phi = cyclotomic_polynomial(conductor);
    let deg = phi.len() - 1;
    if p.len() > deg {
        for k in (deg..p.len()).rev() {
            let c = p[k];
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    p[k - deg + j] -= c * Rational::from_integer(pj);
                }
            }
            p[k] = Rational::zero();
        }
    }
    p.resize(deg, Rational::zero());
    p.into_iter().collect()
}

impl Cyclotomic {
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Self {
        assert!(conductor >= 1);
        Cyclotomic { conductor, coeffs: reduce(coeffs, conductor) }
    }

    pub fn rational(conductor: u32, q: Rational) -> Self {
        let mut coeffs: Coeffs = smallvec![Rational::zero(); totient(conductor)];
        coeffs[0] = q;
        Cyclotomic { conductor, coeffs }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::rational(conductor, Rational::zero())
    }

    pub fn one(conductor: u32) -> Self {
        Self::rational(conductor, Rational::one())
    }

    /// ζ_m^k expressed in conductor `conductor` (which must be a multiple of m).
    pub fn root_of_unity(conductor: u32, m: u32, k: i64) -> Self {
        assert!(conductor.is_multiple_of(m), "conductor {conductor} does not contain μ_{m}");
        let e = (k.rem_euclid(m as i64) as u32) * (conductor / m);
        let mut p = vec![Rational::zero(); e as usize + 1];
        p[e as usize] = Rational::one();
        Self::from_coeffs(conductor, p)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0])
    }

    pub fn lift(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.conductor), "cannot lift conductor {} to {}", self.conductor, target);
        let step = (target / self.conductor) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[k * step] = *c;
        }
        Self::from_coeffs(target, p)
    }

    pub fn common_conductor(&self, other: &Self, limit: u32) -> Result<u32> {
        let n = lcm(self.conductor, other.conductor);
        if n > limit {
            return Err(Error::ConductorLimit { requested: n, limit });
        }
        Ok(n)
    }

    fn aligned<'a>(&'a self, other: &'a Self, limit: u32) -> Result<(std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>)> {
        use std::borrow::Cow;
        if self.conductor == other.conductor {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        let n = self.common_conductor(other, limit)?;
        Ok((Cow::Owned(self.lift(n)), Cow::Owned(other.lift(n))))
    }

    pub fn try_add(&self, other: &Self, limit: u32) -> Result<Self> {
        let (a, b) = self.aligned(other, limit)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclotomic { conductor: a.conductor, coeffs })
    }

    pub fn try_mul(&self, other: &Self, limit: u32) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            let n = self.common_conductor(other, limit)?;
            return Ok(Self::zero(n));
        }
        let (a, b) = self.aligned(other, limit)?;
        let d = a.coeffs.len();
        let mut p = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_coeffs(a.conductor, p))
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: Rational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        if n <= 2 {
            return self.clone();
        }
        let mut p = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[(n - k) % n] += *c;
        }
        Self::from_coeffs(self.conductor, p)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // c·ζ^k: inverse is conj / c²
        let nonzero: Vec<usize> = (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect();
        if nonzero.len() == 1 {
            let c = self.coeffs[nonzero[0]];
            return Ok(self.conj().scale((c * c).recip()));
        }
        // solve the multiplication-by-self system over ℚ
        let d = self.coeffs.len();
        let cols: Vec<Cyclotomic> = (0..d)
            .map(|j| {
                let mut e = vec![Rational::zero(); j + 1];
                e[j] = Rational::one();
                self.try_mul(&Cyclotomic::from_coeffs(self.conductor, e), u32::MAX)
            })
            .collect::<Result<_>>()?;
        let a: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| cols[j].coeffs[i]).collect()).collect();
        let mut b = vec![Rational::zero(); d];
        b[0] = Rational::one();
        let x = bareiss::solve(&a, &b)?.ok_or(Error::DivisionByZero)?;
        Ok(Cyclotomic::from_coeffs(self.conductor, x))
    }

    /// Lexicographic order on coefficient vectors at the common conductor, larger
    /// coefficients first (so 1 precedes −1).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other, u32::MAX).expect("unbounded lift");
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match y.cmp(x) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        self.cmp_canonical(other) == Ordering::Equal
    }
}

impl Eq for Cyclotomic {}

/// Smallest conductor containing ζ_a and ζ_b.
pub fn join_conductors(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}
