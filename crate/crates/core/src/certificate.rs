//! Maximality certificates from commutants of the φ-values of an antipodal set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::conjugacy::structure_involution;
use crate::linalg::{commutant_basis, matrix_rank, simultaneous_blocks, AntilinearTwist};
use crate::matrix::Matrix;
use crate::pool::SearchPool;
use crate::search::pool_extension;
use crate::space::{AntipodalSet, CosetPoint, Method, SpaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tier {
    PoolMaximal,
    CertifiedMaximal,
    NotMaximal,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::PoolMaximal => "pool-maximal",
            Tier::CertifiedMaximal => "certified-maximal",
            Tier::NotMaximal => "not-maximal",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaximalityCertificate {
    pub verdict: Tier,
    pub witness: Option<CosetPoint>,
    pub commutant_dim: Option<usize>,
}

/// Certificate for an antipodal X; sets without the origin are translated first.
pub fn maximality_certificate(space: &SpaceModel, x: &AntipodalSet, pool: Option<&SearchPool>) -> Result<MaximalityCertificate> {
    if !space.is_antipodal_set(x, Method::Pairwise)?.antipodal {
        return Err(Error::NotAntipodal);
    }
    if x.is_empty() {
        return Err(Error::MissingOrigin);
    }
    if space.contains_origin(x) {
        return certify(space, x, pool);
    }
    let g0 = x.points[0].rep.clone();
    let back = space.ambient.inverse(&g0);
    let moved = space.make_set(x.points.iter().map(|p| CosetPoint::new(back.mul(&p.rep))).collect())?;
    let mut cert = certify(space, &moved, pool)?;
    cert.witness = cert.witness.map(|w| CosetPoint::new(space.ambient.canonical_rep(&g0.mul(&w.rep))));
    Ok(cert)
}

fn pool_tier(space: &SpaceModel, x: &AntipodalSet, pool: Option<&SearchPool>, dim: Option<usize>) -> Result<MaximalityCertificate> {
    let pool = pool.ok_or_else(|| Error::WitnessUnavailable("no pool supplied".into()))?;
    Ok(match pool_extension(space, x, pool) {
        Some(w) => MaximalityCertificate { verdict: Tier::NotMaximal, witness: Some(w), commutant_dim: dim },
        None => MaximalityCertificate { verdict: Tier::PoolMaximal, witness: None, commutant_dim: dim },
    })
}

fn certify(space: &SpaceModel, x: &AntipodalSet, pool: Option<&SearchPool>) -> Result<MaximalityCertificate> {
    let a = &space.ambient;
    if space.is_group_form() || !space.is_full() || a.kernel().len() > 1 {
        return pool_tier(space, x, pool, None);
    }
    let phis: Vec<Matrix> = x.points.iter().map(|p| space.phi_raw(&p.rep)).collect();
    let exact = phis.iter().all(|f| f.mul(f).is_identity())
        && phis.iter().enumerate().all(|(i, f)| phis[i + 1..].iter().all(|g| f.commutes_with(g)));
    if !exact {
        return pool_tier(space, x, pool, None);
    }
    let mut invs: Vec<Matrix> = phis.iter().filter(|f| !f.is_identity()).cloned().collect();
    let twist = a.theta.antilinear.then(|| AntilinearTwist { m: a.theta.conjugator.clone() });
    let mut constraints = invs.clone();
    if !a.theta.antilinear {
        constraints.push(a.theta.conjugator.clone());
    }
    let dim = commutant_basis(a.n(), a.kind(), a.conductor, &constraints, twist.as_ref())?.len();
    if let Some(s) = structure_involution(space) {
        invs.push(s);
    }
    let blocks = simultaneous_blocks(&invs, a.n(), a.kind(), a.conductor);
    if blocks.iter().any(|p| matrix_rank(p) > 1) {
        return pool_tier(space, x, pool, Some(dim));
    }
    let known: Vec<Vec<i64>> = phis.iter().map(|f| a.key(f)).collect();
    for mask in 0u64..1 << blocks.len() {
        let cand = blocks
            .iter()
            .enumerate()
            .map(|(k, p)| if mask >> k & 1 == 1 { p.neg() } else { p.clone() })
            .reduce(|s, t| s.add(&t))
            .expect("at least one block");
        if known.contains(&a.key(&cand)) || !a.contains(&cand)? || !space.in_h(&cand) {
            continue;
        }
        if a.in_class_of_thetabar(&a.ext(&cand, true))? {
            let witness = pool
                .and_then(|p| p.find_by_phi(&cand).map(|i| p.point(i)))
                .or_else(|| pool.and_then(|p| pool_extension(space, x, p)))
                .ok_or_else(|| Error::WitnessUnavailable("extending φ-value has no pool preimage".into()))?;
            verify_witness(space, x, &witness)?;
            return Ok(MaximalityCertificate { verdict: Tier::NotMaximal, witness: Some(witness), commutant_dim: Some(dim) });
        }
    }
    debug_assert!(pool.is_none_or(|p| pool_extension(space, x, p).is_none()));
    Ok(MaximalityCertificate { verdict: Tier::CertifiedMaximal, witness: None, commutant_dim: Some(dim) })
}

fn verify_witness(space: &SpaceModel, x: &AntipodalSet, w: &CosetPoint) -> Result<()> {
    let fresh = !x.points.iter().any(|p| space.coset_eq(p, w));
    let mut pts = x.points.clone();
    pts.push(w.clone());
    let ext = space.make_set(pts)?;
    if fresh && space.is_antipodal_set(&ext, Method::Pairwise)?.antipodal {
        Ok(())
    } else {
        Err(Error::WitnessUnavailable("candidate witness does not extend the set".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Ambient, Family, GroupSpec, ThetaKind};
    use crate::scalar::ScalarKind;
    use crate::search::extend_to_maximal;

    fn setup(f: Family, n: usize, t: ThetaKind) -> (SpaceModel, SearchPool) {
        let s = SpaceModel::full(Ambient::new(GroupSpec::new(f, n, 1).unwrap(), t, None).unwrap());
        let p = SearchPool::build(&s, 4, true, 200_000).unwrap();
        (s, p)
    }

    #[test]
    fn certified_sets() {
        let (s, p) = setup(Family::SU, 3, ThetaKind::Tau);
        let x = extend_to_maximal(&s, &s.make_set(vec![s.origin()]).unwrap(), &p).unwrap();
        let c = maximality_certificate(&s, &x, Some(&p)).unwrap();
        assert_eq!((c.verdict, c.commutant_dim), (Tier::CertifiedMaximal, Some(3)));
        let (s, p) = setup(Family::SU, 4, ThetaKind::AdIpq { p: 2, q: 2 });
        let x = extend_to_maximal(&s, &s.make_set(vec![s.origin()]).unwrap(), &p).unwrap();
        assert_eq!(maximality_certificate(&s, &x, Some(&p)).unwrap().verdict, Tier::CertifiedMaximal);
    }

    #[test]
    fn origin_alone_is_not_maximal() {
        let (s, p) = setup(Family::SU, 2, ThetaKind::AdIpq { p: 1, q: 1 });
        let o = s.make_set(vec![s.origin()]).unwrap();
        let c = maximality_certificate(&s, &o, Some(&p)).unwrap();
        assert_eq!(c.verdict, Tier::NotMaximal);
        let j = Matrix::j_block(1, ScalarKind::Cyclotomic, s.ambient.conductor);
        assert!(s.coset_eq(&c.witness.unwrap(), &s.point(&j).unwrap()));
    }

    #[test]
    fn removed_point_is_recovered() {
        let (s, p) = setup(Family::Sp, 2, ThetaKind::AdiI);
        let x = extend_to_maximal(&s, &s.make_set(vec![s.origin()]).unwrap(), &p).unwrap();
        for k in 0..x.len() {
            let mut pts = x.points.clone();
            pts.remove(k);
            let y = s.make_set(pts).unwrap();
            let c = maximality_certificate(&s, &y, Some(&p)).unwrap();
            assert_eq!(c.verdict, Tier::NotMaximal);
            assert!(!y.points.iter().any(|q| s.coset_eq(q, c.witness.as_ref().unwrap())));
        }
    }
}
