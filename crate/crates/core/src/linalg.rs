//! Exact ranks, involution signatures, commutants and eigenspace projectors.

use num::{One, Zero};

use crate::bareiss;
use crate::error::{Error, Result};
use crate::matrix::{real_basis, real_degree, realify_blocks, Matrix};
use crate::scalar::{Rational, Scalar, ScalarKind};

/// Rank over the scalar field (cyclotomic) or skew field (quaternion).
pub fn field_rank(rows: &[Vec<Scalar>], kind: ScalarKind, conductor: u32) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let real = realify_blocks(rows, kind, conductor);
    let ncols = real.first().map_or(0, Vec::len);
    bareiss::rank(&real, ncols) / real_degree(kind, conductor)
}

pub fn matrix_rank(a: &Matrix) -> usize {
    field_rank(&a.rows(), a.kind(), a.conductor())
}

/// (p, q) with p the multiplicity of −1, computed as rank((I − B)/2).
pub fn involution_signature(b: &Matrix) -> Result<(usize, usize)> {
    let id = b.identity_like();
    if !b.mul(b).is_identity() {
        return Err(Error::NotAnInvolution);
    }
    let half = Rational::new(1, 2);
    let p = matrix_rank(&id.sub(b).scale_rational(half));
    Ok((p, b.n() - p))
}

/// Antilinear constraint Y·M = M·conj(Y), i.e. Y commutes with v ↦ M·conj(v).
#[derive(Debug, Clone)]
pub struct AntilinearTwist {
    pub m: Matrix,
}

/// d×d rational matrix of a ℚ-linear map on the scalar field.
fn linear_block(kind: ScalarKind, conductor: u32, f: impl Fn(&Scalar) -> Scalar) -> Vec<Vec<Rational>> {
    let basis = real_basis(kind, conductor);
    let d = basis.len();
    let mut out = vec![vec![Rational::zero(); d]; d];
    for (c, e) in basis.iter().enumerate() {
        for (r, x) in f(e).coords(conductor).into_iter().enumerate() {
            out[r][c] = x;
        }
    }
    out
}

struct System {
    d: usize,
    nunk: usize,
    rows: Vec<Vec<Rational>>,
}

impl System {
    fn new(d: usize, nunk: usize) -> Self {
        System { d, nunk, rows: Vec::new() }
    }

    fn new_equation(&mut self) -> usize {
        let start = self.rows.len();
        for _ in 0..self.d {
            self.rows.push(vec![Rational::zero(); self.nunk * self.d]);
        }
        start
    }

    fn add_block(&mut self, eq: usize, unknown: usize, block: &[Vec<Rational>]) {
        for (r, row) in block.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    self.rows[eq + r][unknown * self.d + c] += *x;
                }
            }
        }
    }
}

/// Exact basis of {Y : YA = AY for all A ∈ S}, optionally also commuting with an antilinear map.
///
/// Cyclotomic input without a twist yields a basis over the field; otherwise the
/// returned matrices form a basis over ℚ of the real solution space.
pub fn commutant_basis(
    n: usize,
    kind: ScalarKind,
    conductor: u32,
    s: &[Matrix],
    twist: Option<&AntilinearTwist>,
) -> Result<Vec<Matrix>> {
    let all = s.iter().chain(twist.map(|t| &t.m));
    let mut conductor = conductor;
    for a in all {
        if a.n() != n {
            return Err(Error::ShapeError(format!("commutant input of size {} in dimension {n}", a.n())));
        }
        if a.kind() != kind {
            return Err(Error::UnsupportedScalarKind("mixed"));
        }
        conductor = num::integer::lcm(conductor, a.conductor());
    }
    let d = real_degree(kind, conductor);
    let unk = |u: usize, v: usize| u * n + v;
    let mut sys = System::new(d, n * n);
    let left = |a: &Scalar| linear_block(kind, conductor, |y| a * y);
    let right = |a: &Scalar| linear_block(kind, conductor, |y| y * a);
    let neg = |b: Vec<Vec<Rational>>| b.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect::<Vec<Vec<_>>>();
    for a in s {
        for i in 0..n {
            for j in 0..n {
                let eq = sys.new_equation();
                for k in 0..n {
                    // (YA)_ij = Σ_k Y_ik A_kj ; (AY)_ij = Σ_k A_ik Y_kj
                    let akj = a.get(k, j);
                    if !akj.is_zero() {
                        sys.add_block(eq, unk(i, k), &right(akj));
                    }
                    let aik = a.get(i, k);
                    if !aik.is_zero() {
                        sys.add_block(eq, unk(k, j), &neg(left(aik)));
                    }
                }
            }
        }
    }
    if let Some(t) = twist {
        if kind == ScalarKind::Quaternion {
            return Err(Error::UnsupportedScalarKind("quaternion"));
        }
        for i in 0..n {
            for j in 0..n {
                let eq = sys.new_equation();
                for k in 0..n {
                    let mkj = t.m.get(k, j);
                    if !mkj.is_zero() {
                        sys.add_block(eq, unk(i, k), &right(mkj));
                    }
                    let mik = t.m.get(i, k).clone();
                    if !mik.is_zero() {
                        let block = linear_block(kind, conductor, |y| &mik * &y.conj());
                        sys.add_block(eq, unk(k, j), &neg(block));
                    }
                }
            }
        }
    }
    let ncols = n * n * d;
    let null = if sys.rows.is_empty() {
        (0..ncols)
            .map(|c| {
                let mut v = vec![Rational::zero(); ncols];
                v[c] = Rational::one();
                v
            })
            .collect()
    } else {
        bareiss::nullspace(&sys.rows, ncols)?
    };
    let to_matrix = |v: &[Rational]| {
        let data = v.chunks(d).map(|c| Scalar::from_coords(kind, conductor, c.to_vec())).collect();
        Matrix::new(n, data).expect("square by construction")
    };
    let real_basis: Vec<Matrix> = null.iter().map(|v| to_matrix(v)).collect();
    if kind == ScalarKind::Quaternion || twist.is_some() || d == 1 {
        return Ok(real_basis);
    }
    // greedy extraction of a field basis from the ℚ-basis
    let mut chosen: Vec<Matrix> = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in real_basis {
        rows.push(m.entries().to_vec());
        if field_rank(&rows, kind, conductor) > chosen.len() {
            chosen.push(m);
        } else {
            rows.pop();
        }
    }
    Ok(chosen)
}

/// Orthogonal projectors onto the simultaneous eigenspaces of commuting involutions.
pub fn simultaneous_blocks(involutions: &[Matrix], n: usize, kind: ScalarKind, conductor: u32) -> Vec<Matrix> {
    let id = Matrix::identity(n, kind, conductor);
    let half = Rational::new(1, 2);
    let mut blocks = vec![id.clone()];
    for m in involutions {
        let plus = id.add(m).scale_rational(half);
        let minus = id.sub(m).scale_rational(half);
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for p in &blocks {
            for e in [&plus, &minus] {
                let q = p.mul(e);
                if !q.is_zero() {
                    next.push(q);
                }
            }
        }
        blocks = next;
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::int(4, n)
    }

    #[test]
    fn signatures() {
        let k = ScalarKind::Cyclotomic;
        assert_eq!(involution_signature(&Matrix::ipq(1, 3, k, 4)).unwrap(), (1, 3));
        assert_eq!(involution_signature(&Matrix::identity(3, k, 4)).unwrap(), (0, 3));
        let swap = Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        assert_eq!(involution_signature(&swap).unwrap(), (1, 1));
        let j = Matrix::j_block(1, k, 4);
        assert_eq!(involution_signature(&j), Err(Error::NotAnInvolution));
        let q = Matrix::ipq(2, 1, ScalarKind::Quaternion, 1);
        assert_eq!(involution_signature(&q).unwrap(), (2, 1));
    }

    #[test]
    fn commutant_examples() {
        let k = ScalarKind::Cyclotomic;
        assert_eq!(commutant_basis(2, k, 4, &[], None).unwrap().len(), 4);
        let d = Matrix::ipq(1, 1, k, 4);
        let basis = commutant_basis(2, k, 4, std::slice::from_ref(&d), None).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(|y| y.is_diagonal() && y.commutes_with(&d)));
        let signs: Vec<Matrix> = (0..3).map(|t| Matrix::diag((0..3).map(|i| c(if i == t { -1 } else { 1 })).collect())).collect();
        assert_eq!(commutant_basis(3, k, 4, &signs, None).unwrap().len(), 3);
    }

    #[test]
    fn real_commutant_under_conjugation() {
        // Y commuting with complex conjugation is real: dimension n² over ℚ
        let k = ScalarKind::Cyclotomic;
        let twist = AntilinearTwist { m: Matrix::identity(2, k, 4) };
        let basis = commutant_basis(2, k, 4, &[], Some(&twist)).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().all(Matrix::is_real));
    }

    #[test]
    fn quaternion_commutant_is_real_algebra() {
        let q = ScalarKind::Quaternion;
        let i = Matrix::identity(1, q, 1).scale(&Scalar::quat(0, 1, 0, 0));
        // centralizer of i in ℍ is ℚ(i): dimension 2
        assert_eq!(commutant_basis(1, q, 1, &[i], None).unwrap().len(), 2);
    }

    #[test]
    fn blocks_of_sign_group() {
        let k = ScalarKind::Cyclotomic;
        let a = Matrix::diag(vec![c(-1), c(1), c(1)]);
        let blocks = simultaneous_blocks(&[a], 3, k, 4);
        let dims: Vec<usize> = blocks.iter().map(matrix_rank).collect();
        assert_eq!(dims, vec![2, 1]);
    }
}
