//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational input rows are scaled to integer rows, eliminated with exact
//! divisions only, and back-substituted in big rationals. Every rank,
//! nullspace and linear solve in the crate ends up here.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Row echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        let d = BigInt::from(*x.denom());
        lcm = lcm.lcm(&d);
    }
    row.iter()
        .map(|x| BigInt::from(*x.numer()) * (&lcm / BigInt::from(*x.denom())))
        .collect()
}

/// Fraction-free elimination; returns the nonzero rows in echelon form.
pub fn echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            integer_row(r)
        })
        .collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            if factor.is_zero() {
                for x in row.iter_mut().skip(col + 1) {
                    if !x.is_zero() {
                        *x = (&*x * &piv) / &prev;
                    }
                }
            } else {
                for j in col + 1..ncols {
                    let v = &row[j] * &piv - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
        }
        prev = piv;
        pivots.push(col);
        rank += 1;
    }
    a.truncate(rank);
    for row in a.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in row.iter_mut() {
                *x /= &g;
            }
        }
    }
    Echelon { rows: a, pivots, ncols }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(rows, ncols).pivots.len()
}

impl Echelon {
    /// Back-substitutes for the pivot variables given values of the free ones.
    fn back_substitute(&self, x: &mut [BigRational]) {
        for (r, &pc) in self.rows.iter().zip(&self.pivots).rev() {
            let mut acc = BigRational::zero();
            for j in pc + 1..self.ncols {
                if !r[j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from_integer(r[j].clone()) * &x[j];
                }
            }
            x[pc] = -acc / BigRational::from_integer(r[pc].clone());
        }
    }

    /// A basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                self.back_substitute(&mut x);
                x
            })
            .collect()
    }
}

pub fn to_rational(x: &BigRational) -> Result<Rational> {
    let n = x.numer().to_i64().ok_or(Error::Overflow)?;
    let d = x.denom().to_i64().ok_or(Error::Overflow)?;
    Ok(Rational::new(n, d))
}

/// Right nullspace of the rational matrix given by `rows`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Result<Vec<Vec<Rational>>> {
    let e = echelon(rows, ncols);
    e.nullspace()
        .iter()
        .map(|v| {
            // scale to a primitive integer vector first to keep entries small
            let mut lcm = BigInt::one();
            for x in v {
                lcm = lcm.lcm(x.denom());
            }
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            ints.iter()
                .map(|x| to_rational(&BigRational::from_integer(x / &g)))
                .collect()
        })
        .collect()
}

/// Solves `a x = b` for square nonsingular `a`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let n = a.len();
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(-*bi);
            r
        })
        .collect();
    let e = echelon(&rows, n + 1);
    if e.pivots.len() != n || e.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n + 1];
    x[n] = BigRational::one();
    e.back_substitute(&mut x);
    x.truncate(n);
    x.iter().map(to_rational).collect::<Result<Vec<_>>>().map(Some)
}
