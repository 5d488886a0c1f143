//! Elementary abelian 2-subgroups of the extended group.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Ambient, ExtendedElement, Family};
use crate::matrix::Matrix;
use crate::pool::SearchPool;
use crate::scalar::Scalar;
use crate::space::{AntipodalSet, Method, SpaceModel};

pub const DEFAULT_RANK_LIMIT: usize = 20;

/// Independent generators over GF(2) with all 2^rank elements materialized.
#[derive(Debug, Clone)]
pub struct Elem2Subgroup {
    pub ambient: Ambient,
    basis: Vec<ExtendedElement>,
    elements: Vec<ExtendedElement>,
    index: HashMap<Vec<i64>, usize>,
    rank_limit: usize,
}

impl Elem2Subgroup {
    pub fn trivial(ambient: &Ambient, rank_limit: usize) -> Self {
        let e = ambient.ext_identity();
        let mut index = HashMap::new();
        index.insert(ambient.ext_key(&e), 0);
        Elem2Subgroup { ambient: ambient.clone(), basis: Vec::new(), elements: vec![e], index, rank_limit }
    }

    /// Subgroup generated by commuting involutions.
    pub fn generate(ambient: &Ambient, gens: &[ExtendedElement], rank_limit: usize) -> Result<Self> {
        let mut f = Self::trivial(ambient, rank_limit);
        for g in gens {
            f.adjoin(g)?;
        }
        Ok(f)
    }

    /// Adds a generator; returns whether the rank grew.
    pub fn adjoin(&mut self, g: &ExtendedElement) -> Result<bool> {
        let a = &self.ambient;
        if !a.ext_is_involution(g)? {
            return Err(Error::NotAntipodal);
        }
        if self.contains(g) {
            return Ok(false);
        }
        for b in &self.basis {
            if a.ext_key(&a.ext_mul(b, g)?) != a.ext_key(&a.ext_mul(g, b)?) {
                return Err(Error::NotAntipodal);
            }
        }
        if self.basis.len() + 1 > self.rank_limit {
            return Err(Error::RankLimit { rank: self.basis.len() + 1, limit: self.rank_limit });
        }
        let mut fresh = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            fresh.push(a.ext_mul(e, g)?);
        }
        for e in fresh {
            self.index.insert(a.ext_key(&e), self.elements.len());
            self.elements.push(e);
        }
        self.basis.push(g.clone());
        Ok(true)
    }

    pub fn contains(&self, g: &ExtendedElement) -> bool {
        self.index.contains_key(&self.ambient.ext_key(g))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn basis(&self) -> &[ExtendedElement] {
        &self.basis
    }

    pub fn elements(&self) -> &[ExtendedElement] {
        &self.elements
    }

    /// The linear part F₁ as a subgroup.
    pub fn linear_part(&self) -> Vec<&ExtendedElement> {
        self.elements.iter().filter(|e| !e.outer).collect()
    }

    /// Same element set, compared by keys.
    pub fn same_as(&self, other: &Elem2Subgroup) -> bool {
        self.order() == other.order() && other.elements.iter().all(|e| self.contains(e))
    }
}

fn require_symmetric_full(space: &SpaceModel) -> Result<()> {
    if space.is_group_form() {
        return Err(Error::SpecMismatch("the group form has no extended group".into()));
    }
    if !space.is_full() {
        return Err(Error::SpecMismatch("requires H equal to the full fixed group".into()));
    }
    Ok(())
}

/// ⟨ψ(X) ∪ {θ̄}⟩ for an antipodal X containing the origin.
pub fn build_f2(space: &SpaceModel, x: &AntipodalSet, rank_limit: usize) -> Result<Elem2Subgroup> {
    require_symmetric_full(space)?;
    if !space.contains_origin(x) {
        return Err(Error::MissingOrigin);
    }
    if !space.is_antipodal_set(x, Method::Pairwise)?.antipodal {
        return Err(Error::NotAntipodal);
    }
    let mut gens = vec![space.ambient.theta_bar()];
    for p in &x.points {
        gens.push(space.psi(p)?);
    }
    Elem2Subgroup::generate(&space.ambient, &gens, rank_limit)
}

/// All pool points whose ψ lies in F.
pub fn saturate(space: &SpaceModel, f: &Elem2Subgroup, pool: &SearchPool) -> Result<AntipodalSet> {
    require_symmetric_full(space)?;
    if !f.contains(&space.ambient.theta_bar()) {
        return Err(Error::MissingThetaBar);
    }
    let a = &pool.space.ambient;
    let mut points = Vec::new();
    for i in 0..pool.len() {
        let phi = pool.phi(i).expect("symmetric pools carry φ");
        if f.contains(&a.ext(phi, true)) {
            points.push(pool.point(i));
        }
    }
    space.make_set(points)
}

fn is_adjoint(a: &Ambient) -> bool {
    let g = &a.group;
    match g.family {
        Family::SU => g.m == g.n,
        Family::SO => g.m == 2 || (g.n % 2 == 1 && g.m == 1),
        Family::Sp => g.m == 2,
    }
}

/// A scalar λ with λ·C in G, when θ is inner.
fn inner_scalar(a: &Ambient) -> Option<Scalar> {
    if a.theta.antilinear {
        return None;
    }
    let c = &a.theta.conjugator;
    let cands: Vec<Scalar> = match a.group.family {
        Family::SU => {
            let order = 2 * a.n() as u32;
            if !a.conductor.is_multiple_of(order) {
                return None;
            }
            (0..order as i64).map(|k| Scalar::root_of_unity(a.conductor, order, k)).collect()
        }
        Family::SO => vec![Scalar::int(a.conductor, 1), Scalar::int(a.conductor, -1)],
        Family::Sp => vec![Scalar::quat(1, 0, 0, 0)],
    };
    cands.into_iter().find(|l| a.contains(&c.scale(l)).unwrap_or(false))
}

fn projection(a: &Ambient) -> Result<Option<Matrix>> {
    if !is_adjoint(a) {
        return Err(Error::SpecMismatch(format!("{} is not of adjoint type", a.group)));
    }
    Ok(inner_scalar(a).map(|l| a.theta.conjugator.scale(&l)))
}

fn project_one(a: &Ambient, lc: &Option<Matrix>, e: &ExtendedElement) -> ExtendedElement {
    match lc {
        Some(lc) if e.outer => a.ext(&e.rep.mul(lc), false),
        _ => e.clone(),
    }
}

/// F(X) = p(F₂(X)) in the automorphism group; inner θ̄ maps to λC.
pub fn adjoint_project(f2: &Elem2Subgroup) -> Result<Elem2Subgroup> {
    let a = &f2.ambient;
    let lc = projection(a)?;
    let gens: Vec<_> = f2.basis.iter().map(|b| project_one(a, &lc, b)).collect();
    Elem2Subgroup::generate(a, &gens, f2.rank_limit)
}

/// ⟨ψ(gH) : p(ψ(gH)) ∈ F⟩ over the pool.
pub fn reconstruct_f2(f: &Elem2Subgroup, pool: &SearchPool) -> Result<Elem2Subgroup> {
    let a = &pool.space.ambient;
    let lc = projection(a)?;
    let mut out = Elem2Subgroup::trivial(a, f.rank_limit);
    out.adjoin(&a.theta_bar())?;
    for i in 0..pool.len() {
        let Some(phi) = pool.phi(i) else { continue };
        let psi = a.ext(phi, true);
        if f.contains(&project_one(a, &lc, &psi)) {
            out.adjoin(&psi)?;
        }
    }
    Ok(out)
}
