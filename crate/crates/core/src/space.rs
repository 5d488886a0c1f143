//! Coset spaces G/H, the Cartan quadratic morphism and antipodality tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Ambient, ExtendedElement};
use crate::matrix::Matrix;

/// Membership test for an H strictly between (G^θ)⁰ and G^θ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleKind {
    /// For S(O(p)×O(q))⁰: θ-fixed with the leading p×p block of determinant +1.
    BlockDetSign { p: usize },
}

#[derive(Debug, Clone)]
pub struct Oracle {
    pub kind: OracleKind,
    /// Representatives of G^θ/H, the identity first.
    pub fiber: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub enum SubgroupMode {
    FullFixedGroup,
    IdentityComponentWithOracle(Oracle),
}

/// A point gH of the space; only the coset is meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPoint {
    pub rep: Matrix,
}

impl CosetPoint {
    pub fn new(rep: Matrix) -> Self {
        CosetPoint { rep }
    }
}

/// Coset-distinct points; when the origin is present it comes first.
#[derive(Debug, Clone)]
pub struct AntipodalSet {
    pub points: Vec<CosetPoint>,
    pub contains_origin: bool,
}

impl AntipodalSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Pairwise,
    PhiCriterion,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pairwise => "pairwise",
            Method::PhiCriterion => "phi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub antipodal: bool,
    pub method: &'static str,
    /// Indices of a failing pair (equal indices flag a single failing point).
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionVerdict {
    pub lifted: bool,
    pub direct: bool,
    pub lifted_size: usize,
}

#[derive(Debug, Clone)]
pub struct SpaceModel {
    pub ambient: Ambient,
    pub mode: SubgroupMode,
}

impl SpaceModel {
    pub fn new(ambient: Ambient, mode: SubgroupMode) -> Self {
        SpaceModel { ambient, mode }
    }

    pub fn full(ambient: Ambient) -> Self {
        Self::new(ambient, SubgroupMode::FullFixedGroup)
    }

    pub fn is_full(&self) -> bool {
        matches!(self.mode, SubgroupMode::FullFixedGroup)
    }

    pub fn is_group_form(&self) -> bool {
        self.ambient.is_group_form()
    }

    /// The same group and involution with H = G^θ.
    pub fn full_model(&self) -> SpaceModel {
        Self::full(self.ambient.clone())
    }

    pub fn origin(&self) -> CosetPoint {
        CosetPoint::new(self.ambient.identity())
    }

    pub fn point(&self, rep: &Matrix) -> Result<CosetPoint> {
        self.ambient.require(rep)?;
        Ok(CosetPoint::new(self.ambient.canonical_rep(rep)))
    }

    /// Membership in H; the identity alone in the group form.
    pub fn in_h(&self, u: &Matrix) -> bool {
        if self.is_group_form() {
            return self.ambient.is_trivial(u);
        }
        if !self.ambient.is_theta_fixed(u) {
            return false;
        }
        match &self.mode {
            SubgroupMode::FullFixedGroup => true,
            SubgroupMode::IdentityComponentWithOracle(o) => match o.kind {
                OracleKind::BlockDetSign { p } => {
                    let block = Matrix::from_fn(p, |i, j| u.get(i, j).clone());
                    block.det().map(|d| d.is_one()).unwrap_or(false)
                }
            },
        }
    }

    pub fn coset_eq(&self, x: &CosetPoint, y: &CosetPoint) -> bool {
        let u = self.ambient.inverse(&x.rep).mul(&y.rep);
        self.in_h(&u)
    }

    /// A key identifying the coset, when one exists without pairwise comparison.
    pub fn coset_key(&self, x: &CosetPoint) -> Option<Vec<i64>> {
        if self.is_group_form() {
            return Some(self.ambient.key(&x.rep));
        }
        match self.mode {
            SubgroupMode::FullFixedGroup => Some(self.ambient.key(&self.phi_raw(&x.rep))),
            SubgroupMode::IdentityComponentWithOracle(_) => None,
        }
    }

    pub(crate) fn phi_raw(&self, g: &Matrix) -> Matrix {
        let th = self.ambient.theta_raw(g);
        self.ambient.canonical_rep(&g.mul(&self.ambient.inverse(&th)))
    }

    fn require_involution(&self) -> Result<()> {
        if self.is_group_form() {
            return Err(Error::SpecMismatch("the group form has no Cartan map".into()));
        }
        Ok(())
    }

    /// φ(gH) = g·θ(g)⁻¹.
    pub fn cartan_phi(&self, x: &CosetPoint) -> Result<Matrix> {
        self.require_involution()?;
        self.ambient.require(&x.rep)?;
        Ok(self.phi_raw(&x.rep))
    }

    /// ψ(gH) = g·θ̄·g⁻¹ = (φ(g), 1).
    pub fn psi(&self, x: &CosetPoint) -> Result<ExtendedElement> {
        Ok(self.ambient.ext(&self.cartan_phi(x)?, true))
    }

    /// s_x(y) = g₁·θ(g₁⁻¹g₂)·H, or x·y⁻¹·x in the group form.
    pub fn geodesic_symmetry(&self, x: &CosetPoint, y: &CosetPoint) -> Result<CosetPoint> {
        self.ambient.require(&x.rep)?;
        self.ambient.require(&y.rep)?;
        let a = &self.ambient;
        let rep = if self.is_group_form() {
            x.rep.mul(&a.inverse(&y.rep)).mul(&x.rep)
        } else {
            x.rep.mul(&a.theta_raw(&a.inverse(&x.rep).mul(&y.rep)))
        };
        Ok(CosetPoint::new(a.canonical_rep(&rep)))
    }

    /// Pair test without membership checks: φ(g₂⁻¹g₁) ∈ H, or (y⁻¹x)² = e in the group form.
    pub(crate) fn pair_raw(&self, x: &Matrix, y: &Matrix) -> bool {
        let u = self.ambient.inverse(y).mul(x);
        if self.is_group_form() {
            return self.ambient.is_trivial(&u.mul(&u));
        }
        self.in_h(&self.phi_raw(&u))
    }

    pub fn is_antipodal_pair(&self, x: &CosetPoint, y: &CosetPoint) -> Result<bool> {
        self.ambient.require(&x.rep)?;
        self.ambient.require(&y.rep)?;
        Ok(self.pair_raw(&x.rep, &y.rep))
    }

    fn require_points(&self, x: &AntipodalSet) -> Result<()> {
        x.points.iter().try_for_each(|p| self.ambient.require(&p.rep))
    }

    pub fn contains_origin(&self, x: &AntipodalSet) -> bool {
        let o = self.origin();
        x.points.iter().any(|p| self.coset_eq(p, &o))
    }

    pub fn is_antipodal_set(&self, x: &AntipodalSet, method: Method) -> Result<Verdict> {
        self.require_points(x)?;
        let pts = &x.points;
        let verdict = |witness: Option<(usize, usize)>| Verdict { antipodal: witness.is_none(), method: method.name(), witness };
        match method {
            Method::Pairwise => {
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        if !self.pair_raw(&pts[i].rep, &pts[j].rep) {
                            return Ok(verdict(Some((i, j))));
                        }
                    }
                }
                Ok(verdict(None))
            }
            Method::PhiCriterion => {
                self.require_involution()?;
                if !self.is_full() {
                    return Err(Error::SpecMismatch("the φ criterion needs H = G^θ".into()));
                }
                if !self.contains_origin(x) {
                    return Err(Error::MissingOrigin);
                }
                let a = &self.ambient;
                let phis: Vec<Matrix> = pts.iter().map(|p| self.phi_raw(&p.rep)).collect();
                for (i, f) in phis.iter().enumerate() {
                    if !self.in_h(f) || !a.is_trivial(&f.mul(f)) {
                        return Ok(verdict(Some((i, i))));
                    }
                }
                for i in 0..phis.len() {
                    for j in i + 1..phis.len() {
                        if !a.eq_mod_kernel(&phis[i].mul(&phis[j]), &phis[j].mul(&phis[i])) {
                            return Ok(verdict(Some((i, j))));
                        }
                    }
                }
                Ok(verdict(None))
            }
        }
    }

    /// Whether x is fixed by s_o: φ(x) ∈ H and φ(x)² = e.
    pub fn fixed_point_test(&self, x: &CosetPoint) -> Result<bool> {
        if !self.is_full() {
            return Err(Error::SpecMismatch("fixed point test needs H = G^θ".into()));
        }
        let f = self.cartan_phi(x)?;
        Ok(self.in_h(&f) && self.ambient.is_trivial(&f.mul(&f)))
    }

    /// The commuting pair (ψ(x), θ̄) attached to an s_o-fixed point.
    pub fn involution_pair(&self, x: &CosetPoint) -> Result<(ExtendedElement, ExtendedElement)> {
        if !self.fixed_point_test(x)? {
            return Err(Error::NotFixed);
        }
        Ok((self.psi(x)?, self.ambient.theta_bar()))
    }

    /// Deduplicates points under coset equality and moves the origin to the front.
    pub fn make_set(&self, points: Vec<CosetPoint>) -> Result<AntipodalSet> {
        let mut out: Vec<CosetPoint> = Vec::with_capacity(points.len());
        let mut keys = std::collections::HashSet::new();
        for p in points {
            self.ambient.require(&p.rep)?;
            let p = CosetPoint::new(self.ambient.canonical_rep(&p.rep));
            match self.coset_key(&p) {
                Some(k) => {
                    if keys.insert(k) {
                        out.push(p);
                    }
                }
                None => {
                    if !out.iter().any(|q| self.coset_eq(q, &p)) {
                        out.push(p);
                    }
                }
            }
        }
        let o = self.origin();
        let pos = out.iter().position(|p| self.coset_eq(p, &o));
        if let Some(pos) = pos {
            let p = out.remove(pos);
            out.insert(0, p);
        }
        Ok(AntipodalSet { points: out, contains_origin: pos.is_some() })
    }

    /// Antipodality of π⁻¹(π(X)) against antipodality of X, both in G/H.
    pub fn projection_antipodal_check(&self, x: &AntipodalSet) -> Result<ProjectionVerdict> {
        let SubgroupMode::IdentityComponentWithOracle(oracle) = &self.mode else {
            return Err(Error::FiberDataRequired);
        };
        if oracle.fiber.is_empty() {
            return Err(Error::FiberDataRequired);
        }
        let lifted_points: Vec<CosetPoint> =
            x.points.iter().flat_map(|p| oracle.fiber.iter().map(move |f| CosetPoint::new(p.rep.mul(f)))).collect();
        let lifted = self.make_set(lifted_points)?;
        debug_assert!(x.points.iter().all(|p| lifted.points.iter().any(|q| self.coset_eq(p, q))));
        let l = self.is_antipodal_set(&lifted, Method::Pairwise)?.antipodal;
        let d = self.is_antipodal_set(x, Method::Pairwise)?.antipodal;
        Ok(ProjectionVerdict { lifted: l, direct: d, lifted_size: lifted.len() })
    }
}

/// Whether a finite subset of G containing e is an elementary abelian 2-subgroup.
pub fn group_form_antipodal_check(ambient: &Ambient, x: &[Matrix]) -> Result<bool> {
    for g in x {
        ambient.require(g)?;
    }
    let keys: std::collections::HashSet<Vec<i64>> = x.iter().map(|g| ambient.key(g)).collect();
    if !x.iter().any(|g| ambient.is_trivial(g)) {
        return Err(Error::MissingOrigin);
    }
    for (i, g) in x.iter().enumerate() {
        if !ambient.is_trivial(&g.mul(g)) {
            return Ok(false);
        }
        for h in &x[i + 1..] {
            let gh = g.mul(h);
            if !ambient.eq_mod_kernel(&gh, &h.mul(g)) || !keys.contains(&ambient.key(&gh)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Family, GroupSpec, ThetaKind};
    use crate::scalar::{Scalar, ScalarKind};

    fn space(family: Family, n: usize, kind: ThetaKind) -> SpaceModel {
        SpaceModel::full(Ambient::new(GroupSpec::new(family, n, 1).unwrap(), kind, Some(8)).unwrap())
    }

    fn j1() -> Matrix {
        Matrix::j_block(1, ScalarKind::Cyclotomic, 8)
    }

    fn w(k: i64) -> Scalar {
        Scalar::root_of_unity(8, 8, k)
    }

    #[test]
    fn phi_examples() {
        let gr = space(Family::SU, 2, ThetaKind::AdIpq { p: 1, q: 1 });
        let ai = space(Family::SU, 2, ThetaKind::Tau);
        assert!(gr.cartan_phi(&gr.origin()).unwrap().is_identity());
        let d = CosetPoint::new(Matrix::diag(vec![w(2), w(-2)]));
        assert_eq!(ai.cartan_phi(&d).unwrap(), gr.ambient.identity().neg());
        let x = CosetPoint::new(j1());
        assert_eq!(gr.cartan_phi(&x).unwrap(), gr.ambient.identity().neg());
        assert_eq!(gr.psi(&x).unwrap(), gr.ambient.ext(&gr.ambient.identity().neg(), true));
        assert_eq!(gr.psi(&gr.origin()).unwrap(), gr.ambient.theta_bar());
    }

    #[test]
    fn symmetry_and_pairs() {
        let gr = space(Family::SU, 2, ThetaKind::AdIpq { p: 1, q: 1 });
        let o = gr.origin();
        let x = CosetPoint::new(j1());
        assert!(gr.coset_eq(&gr.geodesic_symmetry(&o, &x).unwrap(), &x));
        assert!(gr.is_antipodal_pair(&o, &x).unwrap());
        assert!(gr.fixed_point_test(&x).unwrap());
        let ai = space(Family::SU, 2, ThetaKind::Tau);
        let g = CosetPoint::new(Matrix::diag(vec![w(1), w(-1)]));
        assert!(!ai.is_antipodal_pair(&ai.origin(), &g).unwrap());
        assert!(!ai.fixed_point_test(&g).unwrap());
        let (p, t) = gr.involution_pair(&x).unwrap();
        let a = &gr.ambient;
        assert_eq!(a.ext_mul(&p, &t).unwrap(), a.ext_mul(&t, &p).unwrap());
        assert_eq!(ai.involution_pair(&g).unwrap_err(), Error::NotFixed);
    }

    #[test]
    fn set_methods_agree() {
        let gr = space(Family::SU, 2, ThetaKind::AdIpq { p: 1, q: 1 });
        let set = gr.make_set(vec![CosetPoint::new(j1()), gr.origin()]).unwrap();
        assert!(set.contains_origin);
        assert!(gr.is_antipodal_set(&set, Method::Pairwise).unwrap().antipodal);
        assert!(gr.is_antipodal_set(&set, Method::PhiCriterion).unwrap().antipodal);
        let no_origin = gr.make_set(vec![CosetPoint::new(j1())]).unwrap();
        assert_eq!(gr.is_antipodal_set(&no_origin, Method::PhiCriterion).unwrap_err(), Error::MissingOrigin);
    }

    #[test]
    fn group_form_examples() {
        let su2 = Ambient::new(GroupSpec::new(Family::SU, 2, 1).unwrap(), ThetaKind::GroupForm, None).unwrap();
        let id = su2.identity();
        assert!(group_form_antipodal_check(&su2, &[id.clone(), id.neg()]).unwrap());
        let j = Matrix::j_block(1, ScalarKind::Cyclotomic, 4);
        assert!(!group_form_antipodal_check(&su2, &[id.clone(), j]).unwrap());
        let so4 = Ambient::new(GroupSpec::new(Family::SO, 4, 1).unwrap(), ThetaKind::GroupForm, None).unwrap();
        let signs: Vec<Matrix> = (0..16u32)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| Matrix::diag((0..4).map(|k| Scalar::int(4, if m >> k & 1 == 1 { -1 } else { 1 })).collect()))
            .collect();
        assert_eq!(signs.len(), 8);
        assert!(group_form_antipodal_check(&so4, &signs).unwrap());
    }
}
