//! Matrix groups, their involutions, and the extended group G ⋊ ⟨θ̄⟩.

use std::fmt;

use num::integer::lcm;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::involution_signature;
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SU,
    SO,
    Sp,
}

/// A compact classical group, optionally divided by a central subgroup of order `m`.
///
/// For SU(n) the kernel is ⟨ω_m I⟩ with m | n; for SO and Sp only m ∈ {1, 2} is
/// meaningful and m = 2 divides by ⟨−I⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    #[serde(default = "one")]
    pub m: usize,
}

fn one() -> usize {
    1
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, m: usize) -> Result<Self> {
        let spec = GroupSpec { family, n, m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecMismatch(msg));
        if self.n == 0 || self.m == 0 {
            return bad(format!("degenerate group {self}"));
        }
        match self.family {
            Family::SU if !self.n.is_multiple_of(self.m) => bad(format!("quotient order {} does not divide {}", self.m, self.n)),
            Family::SO if self.m > 2 || (self.m == 2 && !self.n.is_multiple_of(2)) => {
                bad(format!("SO({}) admits no central quotient of order {}", self.n, self.m))
            }
            Family::Sp if self.m > 2 => bad(format!("Sp({}) admits no central quotient of order {}", self.n, self.m)),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self.family {
            Family::Sp => ScalarKind::Quaternion,
            _ => ScalarKind::Cyclotomic,
        }
    }

    /// Smallest conductor holding the kernel and the standard involutions.
    pub fn base_conductor(&self) -> u32 {
        match self.family {
            Family::SU => lcm(4, 2 * self.m as u32),
            _ => 4,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::SU => "SU",
            Family::SO => "SO",
            Family::Sp => "Sp",
        };
        if self.m == 1 {
            write!(f, "{name}({})", self.n)
        } else {
            write!(f, "{name}({})/μ{}", self.n, self.m)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "theta")]
pub enum ThetaKind {
    AdIpq { p: usize, q: usize },
    AdJn,
    AdiI,
    Tau,
    TauPrime,
    GroupForm,
}

impl ThetaKind {
    pub fn is_antilinear(self) -> bool {
        matches!(self, ThetaKind::Tau | ThetaKind::TauPrime)
    }
}

/// θ(A) = C·A·C⁻¹ for linear kinds and C·conj(A)·C⁻¹ for antilinear kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSpec {
    pub kind: ThetaKind,
    pub conjugator: Matrix,
    pub antilinear: bool,
}

impl InvolutionSpec {
    pub fn new(kind: ThetaKind, group: &GroupSpec, conductor: u32) -> Result<Self> {
        let (n, sk) = (group.n, group.kind());
        let mismatch = || Err(Error::SpecMismatch(format!("{kind:?} is not an involution of {group}")));
        let conjugator = match kind {
            ThetaKind::AdIpq { p, q } => {
                if p + q != n || p == 0 || q == 0 {
                    return mismatch();
                }
                Matrix::ipq(p, q, sk, conductor)
            }
            ThetaKind::AdJn => {
                if group.family != Family::SO || n % 2 != 0 {
                    return mismatch();
                }
                Matrix::j_block(n / 2, sk, conductor)
            }
            ThetaKind::AdiI => {
                if group.family != Family::Sp {
                    return mismatch();
                }
                Matrix::identity(n, sk, conductor).scale(&Scalar::quat(0, 1, 0, 0))
            }
            ThetaKind::Tau => {
                if group.family != Family::SU {
                    return mismatch();
                }
                Matrix::identity(n, sk, conductor)
            }
            ThetaKind::TauPrime => {
                if group.family != Family::SU || n % 2 != 0 {
                    return mismatch();
                }
                Matrix::j_block(n / 2, sk, conductor)
            }
            ThetaKind::GroupForm => Matrix::identity(n, sk, conductor),
        };
        Ok(InvolutionSpec { kind, conjugator, antilinear: kind.is_antilinear() })
    }
}

/// An element g·θ̄^ε of the extended group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedElement {
    pub rep: Matrix,
    pub outer: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AntilinearType {
    Symmetric,
    Antisymmetric,
}

/// Conjugation invariants of an involution of the extended group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSignature {
    pub component: u8,
    pub linear_signature: Option<(usize, usize)>,
    pub antilinear_type: Option<AntilinearType>,
    pub pfaffian_sign: Option<i8>,
    /// Signatures reachable through admissible central twists, sorted.
    pub center_orbit: Vec<(usize, usize)>,
}

/// A group together with an involution: the ambient data of a symmetric space.
#[derive(Debug, Clone)]
pub struct Ambient {
    pub group: GroupSpec,
    pub theta: InvolutionSpec,
    pub conductor: u32,
    kernel: Vec<Scalar>,
    conj_inv: Matrix,
    c_squared: Matrix,
}

impl Ambient {
    pub fn new(group: GroupSpec, kind: ThetaKind, conductor: Option<u32>) -> Result<Self> {
        group.validate()?;
        let base = group.base_conductor();
        let conductor = conductor.map_or(base, |c| lcm(c, base));
        let theta = InvolutionSpec::new(kind, &group, conductor)?;
        let kernel = match group.family {
            Family::SU => (0..group.m as i64).map(|k| Scalar::root_of_unity(conductor, group.m as u32, k)).collect(),
            Family::SO => (0..group.m as i64).map(|k| Scalar::int(conductor, if k == 0 { 1 } else { -1 })).collect(),
            Family::Sp => (0..group.m as i64).map(|k| Scalar::quat(if k == 0 { 1 } else { -1 }, 0, 0, 0)).collect(),
        };
        let conj_inv = theta.conjugator.adjoint();
        let c_squared = theta.conjugator.mul(&theta.conjugator);
        Ok(Ambient { group, theta, conductor, kernel, conj_inv, c_squared })
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn kind(&self) -> ScalarKind {
        self.group.kind()
    }

    pub fn kernel(&self) -> &[Scalar] {
        &self.kernel
    }

    pub fn is_group_form(&self) -> bool {
        self.theta.kind == ThetaKind::GroupForm
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.n(), self.kind(), self.conductor)
    }

    fn check_shape(&self, a: &Matrix) -> Result<()> {
        if a.n() != self.n() {
            return Err(Error::ShapeError(format!("expected a {0}x{0} matrix for {1}, got {2}x{2}", self.n(), self.group, a.n())));
        }
        if a.kind() != self.kind() {
            return Err(Error::UnsupportedScalarKind(a.kind().name()));
        }
        Ok(())
    }

    /// Group membership of a representative.
    pub fn contains(&self, a: &Matrix) -> Result<bool> {
        self.check_shape(a)?;
        if !a.mul(&a.adjoint()).is_identity() {
            return Ok(false);
        }
        Ok(match self.group.family {
            Family::SU => a.det()?.is_one(),
            Family::SO => a.is_real() && a.det()?.is_one(),
            Family::Sp => true,
        })
    }

    pub fn require(&self, a: &Matrix) -> Result<()> {
        if self.contains(a)? {
            Ok(())
        } else {
            Err(Error::NotInGroup)
        }
    }

    /// Inverse of a unitary representative.
    pub fn inverse(&self, a: &Matrix) -> Matrix {
        a.adjoint()
    }

    pub fn theta_apply(&self, a: &Matrix) -> Result<Matrix> {
        self.check_shape(a)?;
        if self.is_group_form() {
            return Err(Error::SpecMismatch("the group form carries no involution".into()));
        }
        Ok(self.theta_raw(a))
    }

    pub(crate) fn theta_raw(&self, a: &Matrix) -> Matrix {
        let c = &self.theta.conjugator;
        let inner = if self.theta.antilinear { a.conj() } else { a.clone() };
        c.mul(&inner).mul(&self.conj_inv)
    }

    /// The least kernel multiple of `a` under the entrywise lexicographic order.
    pub fn canonical_rep(&self, a: &Matrix) -> Matrix {
        let a = a.lift(self.conductor);
        if self.kernel.len() == 1 {
            return a;
        }
        let mut best = a.clone();
        for z in &self.kernel[1..] {
            let cand = a.scale(z);
            if cand.cmp_canonical(&best).is_lt() {
                best = cand;
            }
        }
        best
    }

    pub fn key(&self, a: &Matrix) -> Vec<i64> {
        self.canonical_rep(a).key(self.conductor)
    }

    pub fn eq_mod_kernel(&self, a: &Matrix, b: &Matrix) -> bool {
        self.kernel.iter().any(|z| a.scale(z) == *b)
    }

    /// Whether `a` is a kernel scalar, i.e. trivial in the quotient.
    pub fn is_trivial(&self, a: &Matrix) -> bool {
        self.kernel.iter().any(|z| a.is_scalar_multiple_of_identity(z))
    }

    /// Whether θ fixes the class of `a` in the quotient.
    pub fn is_theta_fixed(&self, a: &Matrix) -> bool {
        self.eq_mod_kernel(&self.theta_raw(a), a)
    }

    /// Whether θ is conjugation by an element of G up to a central scalar.
    pub fn theta_is_inner(&self) -> bool {
        let c = &self.theta.conjugator;
        match (self.group.family, self.theta.antilinear) {
            (Family::SU, true) => self.n() == 2,
            (Family::SU, false) | (Family::Sp, _) => true,
            (Family::SO, _) => self.n() % 2 == 1 || c.det().is_ok_and(|d| d == d.one_like()),
        }
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.canonical_rep(&a.mul(b))
    }

    pub fn ext(&self, rep: &Matrix, outer: bool) -> ExtendedElement {
        ExtendedElement { rep: self.canonical_rep(rep), outer }
    }

    pub fn ext_identity(&self) -> ExtendedElement {
        self.ext(&self.identity(), false)
    }

    pub fn theta_bar(&self) -> ExtendedElement {
        self.ext(&self.identity(), true)
    }

    /// (g, ε)·(h, δ) = (g·θ^ε(h), ε ⊕ δ).
    pub fn ext_mul(&self, s: &ExtendedElement, t: &ExtendedElement) -> Result<ExtendedElement> {
        self.check_shape(&s.rep)?;
        self.check_shape(&t.rep)?;
        if self.is_group_form() {
            return Err(Error::SpecMismatch("the group form has no extended group".into()));
        }
        let h = if s.outer { self.theta_raw(&t.rep) } else { t.rep.clone() };
        Ok(self.ext(&s.rep.mul(&h), s.outer ^ t.outer))
    }

    pub fn ext_inverse(&self, s: &ExtendedElement) -> ExtendedElement {
        let inv = self.inverse(&s.rep);
        if s.outer {
            self.ext(&self.theta_raw(&inv), true)
        } else {
            self.ext(&inv, false)
        }
    }

    pub fn ext_key(&self, s: &ExtendedElement) -> Vec<i64> {
        let mut k = self.key(&s.rep);
        k.push(s.outer as i64);
        k
    }

    pub fn ext_is_involution(&self, t: &ExtendedElement) -> Result<bool> {
        let sq = self.ext_mul(t, t)?;
        Ok(!sq.outer && self.is_trivial(&sq.rep))
    }

    fn lifts(&self, g: &Matrix) -> impl Iterator<Item = Matrix> + '_ {
        let g = g.clone();
        self.kernel.iter().map(move |z| g.scale(z))
    }

    /// Whether the involution t is G-conjugate to θ̄.
    pub fn in_class_of_thetabar(&self, t: &ExtendedElement) -> Result<bool> {
        if !self.ext_is_involution(t)? {
            return Err(Error::NotAnInvolution);
        }
        if !t.outer {
            return Ok(false);
        }
        let c = &self.theta.conjugator;
        for g in self.lifts(&t.rep) {
            let b = g.mul(c);
            let ok = match self.theta.kind {
                ThetaKind::Tau => b.is_symmetric(),
                ThetaKind::TauPrime => b.is_antisymmetric() && b.pfaffian()? == c.pfaffian()?,
                _ => {
                    if b.mul(&b) != self.c_squared {
                        false
                    } else if self.c_squared.is_identity() {
                        involution_signature(&b)? == involution_signature(c)?
                    } else if self.kind() == ScalarKind::Quaternion {
                        true
                    } else {
                        b.pfaffian()? == c.pfaffian()?
                    }
                }
            };
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Conjugation invariants of an involution t.
    pub fn class_signature(&self, t: &ExtendedElement) -> Result<ClassSignature> {
        if !self.ext_is_involution(t)? {
            return Err(Error::NotAnInvolution);
        }
        let mut sig = ClassSignature {
            component: t.outer as u8,
            linear_signature: None,
            antilinear_type: None,
            pfaffian_sign: None,
            center_orbit: Vec::new(),
        };
        let omega4 = Scalar::root_of_unity(self.conductor, 4, 1);
        let c = &self.theta.conjugator;
        let mut pf_signs = Vec::new();
        for g in self.lifts(&t.rep) {
            let b = if t.outer && !self.theta.antilinear { g.mul(c) } else { g.clone() };
            if t.outer && self.theta.antilinear {
                let s = g.mul(c);
                if s.is_symmetric() {
                    sig.antilinear_type = Some(AntilinearType::Symmetric);
                } else if s.is_antisymmetric() {
                    sig.antilinear_type.get_or_insert(AntilinearType::Antisymmetric);
                    if s.n() % 2 == 0 && self.theta.kind == ThetaKind::TauPrime {
                        pf_signs.push(if s.pfaffian()? == c.pfaffian()? { 1 } else { -1 });
                    }
                }
                continue;
            }
            let sq = b.mul(&b);
            if sq.is_identity() {
                sig.center_orbit.push(involution_signature(&b)?);
            } else if sq.is_scalar_multiple_of_identity(&(-&b.entries()[0].one_like())) && self.kind() == ScalarKind::Cyclotomic {
                sig.center_orbit.push(involution_signature(&b.scale(&omega4))?);
                if b.is_real() && b.is_antisymmetric() {
                    pf_signs.push(if b.pfaffian()? == Matrix::j_block(b.n() / 2, self.kind(), self.conductor).pfaffian()? { 1 } else { -1 });
                }
            }
        }
        sig.center_orbit.sort();
        sig.center_orbit.dedup();
        sig.linear_signature = sig.center_orbit.first().copied();
        sig.pfaffian_sign = pf_signs.iter().max().copied();
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su(n: usize, m: usize, kind: ThetaKind) -> Ambient {
        Ambient::new(GroupSpec::new(Family::SU, n, m).unwrap(), kind, None).unwrap()
    }

    fn c(n: i64) -> Scalar {
        Scalar::int(4, n)
    }

    fn i4() -> Scalar {
        Scalar::root_of_unity(4, 4, 1)
    }

    fn j1() -> Matrix {
        Matrix::j_block(1, ScalarKind::Cyclotomic, 4)
    }

    #[test]
    fn membership_examples() {
        let a = su(2, 1, ThetaKind::Tau);
        assert!(a.contains(&Matrix::diag(vec![i4(), -&i4()])).unwrap());
        let so3 = Ambient::new(GroupSpec::new(Family::SO, 3, 1).unwrap(), ThetaKind::GroupForm, None).unwrap();
        assert!(!so3.contains(&Matrix::diag(vec![c(1), c(1), c(-1)])).unwrap());
        let sp1 = Ambient::new(GroupSpec::new(Family::Sp, 1, 1).unwrap(), ThetaKind::AdiI, None).unwrap();
        let j = Matrix::diag(vec![Scalar::quat(0, 0, 1, 0)]);
        assert!(sp1.contains(&j).unwrap());
        assert!(matches!(a.contains(&Matrix::identity(3, ScalarKind::Cyclotomic, 4)), Err(Error::ShapeError(_))));
    }

    #[test]
    fn theta_examples() {
        let a = su(2, 1, ThetaKind::AdIpq { p: 1, q: 1 });
        assert_eq!(a.theta_apply(&j1()).unwrap(), j1().neg());
        let t = su(2, 1, ThetaKind::Tau);
        let d = Matrix::diag(vec![i4(), -&i4()]);
        assert_eq!(t.theta_apply(&d).unwrap(), Matrix::diag(vec![-&i4(), i4()]));
        let sp1 = Ambient::new(GroupSpec::new(Family::Sp, 1, 1).unwrap(), ThetaKind::AdiI, None).unwrap();
        let j = Matrix::diag(vec![Scalar::quat(0, 0, 1, 0)]);
        assert_eq!(sp1.theta_apply(&j).unwrap(), j.neg());
        assert!(matches!(
            Ambient::new(GroupSpec::new(Family::SU, 2, 1).unwrap(), ThetaKind::AdiI, None),
            Err(Error::SpecMismatch(_))
        ));
    }

    #[test]
    fn extended_products() {
        let a = su(2, 1, ThetaKind::AdIpq { p: 1, q: 1 });
        let tb = a.theta_bar();
        assert_eq!(a.ext_mul(&tb, &tb).unwrap(), a.ext_identity());
        // (J₁,1)² = (J₁·θ(J₁), 0) = (J₁·(−J₁), 0) = (I, 0)
        let t = a.ext(&j1(), true);
        assert_eq!(a.ext_mul(&t, &t).unwrap(), a.ext_identity());
        // conjugating θ̄ by g gives (g·θ(g)⁻¹, 1)
        let g = a.ext(&j1(), false);
        let conj = a.ext_mul(&a.ext_mul(&g, &tb).unwrap(), &a.ext_inverse(&g)).unwrap();
        let phi = j1().mul(&a.theta_apply(&j1()).unwrap().adjoint());
        assert_eq!(conj, a.ext(&phi, true));
    }

    #[test]
    fn canonical_representatives() {
        let a = su(2, 2, ThetaKind::Tau);
        let id = a.identity();
        assert_eq!(a.canonical_rep(&id.neg()), id);
        let d = Matrix::diag(vec![i4(), -&i4()]);
        let r = a.canonical_rep(&d);
        assert_eq!(r, a.canonical_rep(&d.neg()));
        let smaller = if d.cmp_canonical(&d.neg()).is_lt() { d.clone() } else { d.neg() };
        assert_eq!(r, smaller);
        assert_eq!(su(2, 1, ThetaKind::Tau).canonical_rep(&d), d);
    }

    #[test]
    fn class_membership() {
        let a = su(2, 1, ThetaKind::AdIpq { p: 1, q: 1 });
        assert!(a.in_class_of_thetabar(&a.theta_bar()).unwrap());
        let b = su(4, 1, ThetaKind::AdIpq { p: 2, q: 2 });
        // det(g·C) = det C forces an even number of −1 eigenvalues; g = C gives g·C = I
        let g = Matrix::ipq(2, 2, ScalarKind::Cyclotomic, 4);
        assert!(b.contains(&g).unwrap());
        let t = b.ext(&g, true);
        assert!(!b.in_class_of_thetabar(&t).unwrap());
        let not_inv = a.ext(&Matrix::diag(vec![i4(), -&i4()]), true);
        assert!(!a.ext_mul(&not_inv, &not_inv).unwrap().outer);
    }
}
