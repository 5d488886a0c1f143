//! Dense square matrices over a single scalar kind.

use std::cmp::Ordering;
use std::fmt;

use num::integer::lcm;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, ScalarKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Adjoint,
    Det,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatValue {
    Matrix(Matrix),
    Scalar(Scalar),
}

/// Checked matrix arithmetic.
pub fn mat_arith(op: MatOp, a: &Matrix, b: Option<&Matrix>) -> Result<MatValue> {
    match op {
        MatOp::Mul => {
            let b = b.ok_or_else(|| Error::ShapeError("mul needs two operands".into()))?;
            a.try_mul(b).map(MatValue::Matrix)
        }
        MatOp::Adjoint => Ok(MatValue::Matrix(a.adjoint())),
        MatOp::Det => a.det().map(MatValue::Scalar),
    }
}

impl Matrix {
    pub fn new(n: usize, data: Vec<Scalar>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::ShapeError(format!("expected {} entries for a {n}x{n} matrix, got {}", n * n, data.len())));
        }
        let kind = data[0].kind();
        if data.iter().any(|s| s.kind() != kind) {
            return Err(Error::UnsupportedScalarKind("mixed"));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeError("matrix rows must form a square".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { n, data }
    }

    /// Identity with entries of the given kind; cyclotomic entries live at `conductor`.
    pub fn identity(n: usize, kind: ScalarKind, conductor: u32) -> Self {
        let (zero, one) = unit_scalars(kind, conductor);
        Self::from_fn(n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn diag(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let zero = entries[0].zero_like();
        let mut data = vec![zero; n * n];
        for (k, e) in entries.into_iter().enumerate() {
            data[k * n + k] = e;
        }
        Matrix { n, data }
    }

    /// I_{p,q} = diag(−I_p, I_q).
    pub fn ipq(p: usize, q: usize, kind: ScalarKind, conductor: u32) -> Self {
        let (_, one) = unit_scalars(kind, conductor);
        let minus = -&one;
        Self::diag((0..p + q).map(|k| if k < p { minus.clone() } else { one.clone() }).collect())
    }

    /// J_m = [[0, I_m], [−I_m, 0]].
    pub fn j_block(m: usize, kind: ScalarKind, conductor: u32) -> Self {
        let (zero, one) = unit_scalars(kind, conductor);
        let minus = -&one;
        Self::from_fn(2 * m, |i, j| {
            if j == i + m {
                one.clone()
            } else if i == j + m {
                minus.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ScalarKind {
        self.data[0].kind()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.n + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Least common conductor of the entries.
    pub fn conductor(&self) -> u32 {
        self.data.iter().fold(1, |acc, s| lcm(acc, s.conductor()))
    }

    pub fn lift(&self, conductor: u32) -> Self {
        let data = self
            .data
            .iter()
            .map(|s| match s {
                Scalar::Cyc(c) => Scalar::Cyc(c.lift(conductor)),
                q => q.clone(),
            })
            .collect();
        Matrix { n: self.n, data }
    }

    pub fn identity_like(&self) -> Self {
        Self::identity(self.n, self.kind(), self.conductor())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::ShapeError(format!("cannot multiply {0}x{0} by {1}x{1}", self.n, other.n)));
        }
        if self.kind() != other.kind() {
            return Err(Error::UnsupportedScalarKind("mixed"));
        }
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let zero = self.data[0].zero_like();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<Scalar> = None;
                for k in 0..n {
                    let a = &self.data[i * n + k];
                    let b = &other.data[k * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                data.push(acc.unwrap_or_else(|| zero.clone()));
            }
        }
        Matrix { n, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Matrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|s| -s)
    }

    /// Left multiplication by a scalar, s·A.
    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|x| s * x)
    }

    pub fn scale_rational(&self, q: Rational) -> Matrix {
        self.map(|x| x.scale(q))
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Matrix {
        self.map(Scalar::conj)
    }

    /// Conjugate transpose; quaternion-conjugate transpose for quaternion entries.
    pub fn adjoint(&self) -> Matrix {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn is_identity(&self) -> bool {
        self.data.iter().enumerate().all(|(k, s)| if k / self.n == k % self.n { s.is_one() } else { s.is_zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Whether the matrix equals `s·I`.
    pub fn is_scalar_multiple_of_identity(&self, s: &Scalar) -> bool {
        self.data.iter().enumerate().all(|(k, x)| if k / self.n == k % self.n { x == s } else { x.is_zero() })
    }

    pub fn is_diagonal(&self) -> bool {
        self.data.iter().enumerate().all(|(k, s)| k / self.n == k % self.n || s.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Column index of the unique nonzero entry of each row, if monomial.
    pub fn monomial_pattern(&self) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n];
        for i in 0..self.n {
            let mut nz = (0..self.n).filter(|&j| !self.get(i, j).is_zero());
            let j = nz.next()?;
            if nz.next().is_some() || seen[j] {
                return None;
            }
            seen[j] = true;
            perm.push(j);
        }
        Some(perm)
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial_pattern().is_some()
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Determinant over the cyclotomic field.
    pub fn det(&self) -> Result<Scalar> {
        if self.kind() == ScalarKind::Quaternion {
            return Err(Error::UnsupportedScalarKind("quaternion"));
        }
        if let Some(perm) = self.monomial_pattern() {
            let mut acc = if permutation_sign(&perm) < 0 { -&self.data[0].one_like() } else { self.data[0].one_like() };
            for (i, &j) in perm.iter().enumerate() {
                acc = &acc * self.get(i, j);
            }
            return Ok(acc);
        }
        let n = self.n;
        let mut a = self.rows();
        let mut det = self.data[0].one_like();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(self.data[0].zero_like());
            };
            if p != col {
                a.swap(p, col);
                det = -&det;
            }
            let piv = a[col][col].clone();
            det = &det * &piv;
            let inv = piv.try_inv()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Pfaffian of an antisymmetric cyclotomic matrix of even size.
    pub fn pfaffian(&self) -> Result<Scalar> {
        if self.kind() == ScalarKind::Quaternion {
            return Err(Error::UnsupportedScalarKind("quaternion"));
        }
        if !self.n.is_multiple_of(2) || !self.is_antisymmetric() {
            return Err(Error::ShapeError("pfaffian needs an antisymmetric matrix of even size".into()));
        }
        let idx: Vec<usize> = (0..self.n).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> Scalar {
        if idx.is_empty() {
            return self.data[0].one_like();
        }
        let first = idx[0];
        let mut acc = self.data[0].zero_like();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = self.get(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let term = a * &self.pfaffian_rec(&rest);
            acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Hashable encoding of the entries at a fixed conductor.
    pub fn key(&self, conductor: u32) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.data.len() * 4);
        for s in &self.data {
            s.push_key(conductor, &mut out);
        }
        out
    }

    /// Lexicographic order over entries.
    pub fn cmp_canonical(&self, other: &Matrix) -> Ordering {
        for (a, b) in self.data.iter().zip(&other.data) {
            match a.cmp_canonical(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// The matrix of the ℚ-linear map v ↦ Av on the realification of the column space.
    pub fn realify(&self, conductor: u32) -> Vec<Vec<Rational>> {
        realify_blocks(&self.rows(), self.kind(), conductor)
    }
}

/// Realifies a rectangular scalar matrix; entry a becomes the block of left multiplication by a.
pub fn realify_blocks(rows: &[Vec<Scalar>], kind: ScalarKind, conductor: u32) -> Vec<Vec<Rational>> {
    let d = real_degree(kind, conductor);
    let basis = real_basis(kind, conductor);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); ncols * d]; rows.len() * d];
    for (i, row) in rows.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, e) in basis.iter().enumerate() {
                let col = (a * e).coords(conductor);
                for (r, x) in col.into_iter().enumerate() {
                    out[i * d + r][j * d + c] = x;
                }
            }
        }
    }
    out
}

/// Dimension of the scalar field (or skew field) over ℚ.
pub fn real_degree(kind: ScalarKind, conductor: u32) -> usize {
    match kind {
        ScalarKind::Cyclotomic => crate::scalar::totient(conductor),
        ScalarKind::Quaternion => 4,
    }
}

/// The standard ℚ-basis: powers of ζ_N, or 1, i, j, k.
pub fn real_basis(kind: ScalarKind, conductor: u32) -> Vec<Scalar> {
    let d = real_degree(kind, conductor);
    (0..d)
        .map(|k| {
            let mut v = vec![Rational::zero(); d];
            v[k] = Rational::one();
            Scalar::from_coords(kind, conductor, v)
        })
        .collect()
}

fn unit_scalars(kind: ScalarKind, conductor: u32) -> (Scalar, Scalar) {
    match kind {
        ScalarKind::Cyclotomic => (Scalar::int(conductor, 0), Scalar::int(conductor, 1)),
        ScalarKind::Quaternion => (Scalar::quat(0, 0, 0, 0), Scalar::quat(1, 0, 0, 0)),
    }
}

/// Sign of a permutation given as an image vector.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::int(4, n)
    }

    fn i4() -> Scalar {
        Scalar::root_of_unity(4, 4, 1)
    }

    #[test]
    fn j_squares_to_minus_identity() {
        let j = Matrix::j_block(1, ScalarKind::Cyclotomic, 4);
        let r = mat_arith(MatOp::Mul, &j, Some(&j)).unwrap();
        assert_eq!(r, MatValue::Matrix(Matrix::identity(2, ScalarKind::Cyclotomic, 4).neg()));
    }

    #[test]
    fn determinant_examples() {
        let ipq = Matrix::ipq(1, 1, ScalarKind::Cyclotomic, 4);
        assert_eq!(mat_arith(MatOp::Det, &ipq, None).unwrap(), MatValue::Scalar(c(-1)));
        let a = Matrix::from_rows(vec![vec![c(1), c(2), c(0)], vec![c(3), c(4), c(1)], vec![c(0), c(1), c(5)]]).unwrap();
        // 1·(20−1) − 2·(15−0) = −11
        assert_eq!(a.det().unwrap(), c(-11));
        let q = Matrix::identity(2, ScalarKind::Quaternion, 1);
        assert_eq!(q.det(), Err(Error::UnsupportedScalarKind("quaternion")));
    }

    #[test]
    fn adjoint_of_diagonal() {
        let d = Matrix::diag(vec![i4(), -&i4()]);
        assert_eq!(d.adjoint(), Matrix::diag(vec![-&i4(), i4()]));
        assert_eq!(d.adjoint().adjoint(), d);
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::identity(2, ScalarKind::Cyclotomic, 4);
        let b = Matrix::identity(3, ScalarKind::Cyclotomic, 4);
        assert!(matches!(mat_arith(MatOp::Mul, &a, Some(&b)), Err(Error::ShapeError(_))));
        assert!(Matrix::new(2, vec![c(1); 3]).is_err());
    }

    #[test]
    fn pfaffian_of_j() {
        let j2 = Matrix::j_block(2, ScalarKind::Cyclotomic, 4);
        // J_2 pairs (0,2) and (1,3): the matching permutation 0 2 1 3 is odd
        assert_eq!(j2.pfaffian().unwrap(), c(-1));
        let j1 = Matrix::j_block(1, ScalarKind::Cyclotomic, 4);
        assert_eq!(j1.pfaffian().unwrap(), c(1));
        let sq = j2.pfaffian().unwrap();
        assert_eq!(&sq * &sq, j2.det().unwrap());
    }

    #[test]
    fn realified_rank_matches_field_rank() {
        let a = Matrix::from_rows(vec![vec![c(1), i4()], vec![i4(), c(-1)]]).unwrap();
        let r = crate::bareiss::rank(&a.realify(4), 4);
        assert_eq!(r, 2);
    }
}
