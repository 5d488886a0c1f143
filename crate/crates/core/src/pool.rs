//! Finite candidate pools: orbits of the origin under a finite group of monomial matrices.

use std::collections::HashMap;

use num::integer::lcm;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Ambient, Family};
use crate::matrix::Matrix;
use crate::scalar::{Quaternion, Rational, Scalar, ScalarKind};
use crate::space::{CosetPoint, Oracle, SpaceModel, SubgroupMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub unit_order: u32,
    pub pool_cap: usize,
    pub restarts: usize,
    pub rank_limit: usize,
    pub monomial_only: bool,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { unit_order: 4, pool_cap: 200_000, restarts: 8, rank_limit: 20, monomial_only: true, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct SearchPool {
    pub space: SpaceModel,
    pub unit_order: u32,
    pub monomial_only: bool,
    generators: Vec<Matrix>,
    reps: Vec<Matrix>,
    phis: Vec<Option<Matrix>>,
    index: HashMap<Vec<i64>, usize>,
    gen_perms: Vec<Vec<u32>>,
    monomial_group_order: Option<u128>,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Order of the monomial generating group before any central quotient.
pub fn monomial_group_order(family: Family, n: usize, unit_order: u32) -> u128 {
    match family {
        Family::SU => factorial(n) * (unit_order as u128).pow(n as u32 - 1),
        Family::SO => factorial(n) * 2u128.pow(n as u32 - 1),
        Family::Sp => factorial(n) * 8u128.pow(n as u32),
    }
}

fn generators(ambient: &Ambient, unit_order: u32, monomial_only: bool) -> Vec<Matrix> {
    let n = ambient.n();
    let cond = ambient.conductor;
    let kind = ambient.kind();
    let id = ambient.identity();
    let zero = id.get(0, 0).zero_like();
    let one = id.get(0, 0).one_like();
    let mut gens = Vec::new();
    let with = |pairs: &[(usize, usize, Scalar)], base: &Matrix| {
        let mut m = base.clone();
        for (i, j, s) in pairs {
            m.set(*i, *j, s.clone());
        }
        m
    };
    for k in 0..n.saturating_sub(1) {
        let mut t = id.clone();
        t.set(k, k, zero.clone());
        t.set(k + 1, k + 1, zero.clone());
        let lower = if kind == ScalarKind::Quaternion { one.clone() } else { -&one };
        gens.push(with(&[(k, k + 1, one.clone()), (k + 1, k, lower)], &t));
    }
    match ambient.group.family {
        Family::SU => {
            for k in 0..n.saturating_sub(1) {
                let z = Scalar::root_of_unity(cond, unit_order, 1);
                let zi = Scalar::root_of_unity(cond, unit_order, -1);
                gens.push(with(&[(k, k, z), (k + 1, k + 1, zi)], &id));
            }
        }
        Family::SO => {
            for k in 0..n.saturating_sub(1) {
                gens.push(with(&[(k, k, -&one), (k + 1, k + 1, -&one)], &id));
            }
        }
        Family::Sp => {
            for k in 0..n {
                gens.push(with(&[(k, k, Scalar::quat(0, 1, 0, 0))], &id));
                gens.push(with(&[(k, k, Scalar::quat(0, 0, 1, 0))], &id));
            }
        }
    }
    if !monomial_only {
        match ambient.group.family {
            Family::Sp => {
                let h = Quaternion::new(Rational::new(1, 2), Rational::new(1, 2), Rational::new(1, 2), Rational::new(1, 2));
                gens.push(with(&[(0, 0, Scalar::Quat(h))], &id));
            }
            _ if n >= 2 && cond.is_multiple_of(8) => {
                // (ζ₈ + ζ₈⁻¹)/2 = 1/√2
                let r = &Scalar::root_of_unity(cond, 8, 1) + &Scalar::root_of_unity(cond, 8, -1);
                let r = r.scale(Rational::new(1, 2));
                gens.push(with(&[(0, 0, r.clone()), (0, 1, r.clone()), (1, 0, -&r), (1, 1, r)], &id));
            }
            _ => {}
        }
    }
    gens
}

/// The space at the pool conductor together with the pool generators.
pub fn generator_set(space: &SpaceModel, unit_order: u32, monomial_only: bool) -> Result<(SpaceModel, Vec<Matrix>)> {
    let family = space.ambient.group.family;
    let unit_order = if family == Family::Sp { 8 } else { unit_order };
    if family != Family::Sp && (unit_order < 2 || unit_order % 2 != 0) {
        return Err(Error::SpecMismatch(format!("unit order {unit_order} must be even")));
    }
    let space = raise_conductor(space, if family == Family::Sp { 1 } else { unit_order })?;
    let gens = generators(&space.ambient, unit_order, monomial_only);
    Ok((space, gens))
}

impl SearchPool {
    /// Breadth-first orbit of the origin; generators act on the left.
    pub fn build(space: &SpaceModel, unit_order: u32, monomial_only: bool, cap: usize) -> Result<SearchPool> {
        let family = space.ambient.group.family;
        let (space, gens) = generator_set(space, unit_order, monomial_only)?;
        let unit_order = if family == Family::Sp { 8 } else { unit_order };
        let has_extra = !monomial_only && gens.len() > generators(&space.ambient, unit_order, true).len();
        let mut pool = SearchPool {
            unit_order,
            monomial_only,
            generators: gens,
            reps: Vec::new(),
            phis: Vec::new(),
            index: HashMap::new(),
            gen_perms: Vec::new(),
            monomial_group_order: (!has_extra).then(|| monomial_group_order(family, space.ambient.n(), unit_order)),
            space,
        };
        pool.gen_perms = vec![Vec::new(); pool.generators.len()];
        pool.insert(pool.space.ambient.identity());
        let mut head = 0;
        while head < pool.reps.len() {
            let g = pool.reps[head].clone();
            for s in 0..pool.generators.len() {
                let h = pool.generators[s].mul(&g);
                let idx = match pool.find_rep(&h) {
                    Some(i) => i,
                    None => {
                        if pool.reps.len() >= cap {
                            return Err(Error::PoolLimit { cap });
                        }
                        pool.insert(h)
                    }
                };
                pool.gen_perms[s].push(idx as u32);
            }
            head += 1;
        }
        Ok(pool)
    }

    fn insert(&mut self, g: Matrix) -> usize {
        let g = self.space.ambient.canonical_rep(&g);
        let idx = self.reps.len();
        let phi = (!self.space.is_group_form()).then(|| self.space.phi_raw(&g));
        if let Some(k) = self.space.coset_key(&CosetPoint::new(g.clone())) {
            self.index.insert(k, idx);
        }
        self.reps.push(g);
        self.phis.push(phi);
        idx
    }

    fn find_rep(&self, g: &Matrix) -> Option<usize> {
        let p = CosetPoint::new(g.clone());
        match self.space.coset_key(&p) {
            Some(k) => self.index.get(&k).copied(),
            None => self.reps.iter().position(|r| self.space.coset_eq(&CosetPoint::new(r.clone()), &p)),
        }
    }

    /// Pool index of the coset of `x`, if present.
    pub fn find(&self, x: &CosetPoint) -> Option<usize> {
        self.find_rep(&x.rep)
    }

    /// Pool index of the point with the given φ value (H = G^θ only).
    pub fn find_by_phi(&self, phi: &Matrix) -> Option<usize> {
        if !self.space.is_full() || self.space.is_group_form() {
            return None;
        }
        self.index.get(&self.space.ambient.key(phi)).copied()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Matrix {
        &self.reps[i]
    }

    pub fn point(&self, i: usize) -> CosetPoint {
        CosetPoint::new(self.reps[i].clone())
    }

    pub fn phi(&self, i: usize) -> Option<&Matrix> {
        self.phis[i].as_ref()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Permutation of pool indices induced by each generator.
    pub fn generator_permutations(&self) -> &[Vec<u32>] {
        &self.gen_perms
    }

    pub fn monomial_group_order(&self) -> Option<u128> {
        self.monomial_group_order
    }

    /// Pool index of g·x.
    pub fn translate(&self, g: &Matrix, i: usize) -> Option<usize> {
        self.find_rep(&g.mul(&self.reps[i]))
    }

    pub fn antipodal(&self, i: usize, j: usize) -> bool {
        i == j || self.space.pair_raw(&self.reps[i], &self.reps[j])
    }
}

/// Rebuilds the space at a conductor divisible by `needed` when required.
fn raise_conductor(space: &SpaceModel, needed: u32) -> Result<SpaceModel> {
    let a = &space.ambient;
    if a.conductor.is_multiple_of(needed) {
        return Ok(space.clone());
    }
    let c = lcm(a.conductor, needed);
    let ambient = Ambient::new(a.group, a.theta.kind, Some(c))?;
    let mode = match &space.mode {
        SubgroupMode::FullFixedGroup => SubgroupMode::FullFixedGroup,
        SubgroupMode::IdentityComponentWithOracle(o) => SubgroupMode::IdentityComponentWithOracle(Oracle {
            kind: o.kind.clone(),
            fiber: o.fiber.iter().map(|f| f.lift(c)).collect(),
        }),
    };
    Ok(SpaceModel::new(ambient, mode))
}

pub fn make_pool(space: &SpaceModel, config: &SearchConfig) -> Result<SearchPool> {
    SearchPool::build(space, config.unit_order, config.monomial_only, config.pool_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupSpec, ThetaKind};

    fn group_pool(family: Family, n: usize, unit_order: u32) -> SearchPool {
        let a = Ambient::new(GroupSpec::new(family, n, 1).unwrap(), ThetaKind::GroupForm, None).unwrap();
        SearchPool::build(&SpaceModel::full(a), unit_order, true, 100_000).unwrap()
    }

    #[test]
    fn group_orbits_match_order_formula() {
        for (f, n, u) in [(Family::SU, 2, 4), (Family::SU, 3, 4), (Family::SO, 3, 4), (Family::SO, 4, 4), (Family::Sp, 1, 8), (Family::Sp, 2, 8)] {
            let p = group_pool(f, n, u);
            assert_eq!(p.len() as u128, monomial_group_order(f, n, u), "{f:?}({n})");
        }
        assert_eq!(group_pool(Family::SU, 2, 4).len(), 8);
        assert_eq!(group_pool(Family::Sp, 1, 8).len(), 8);
        assert_eq!(group_pool(Family::SO, 3, 4).len(), 24);
    }

    #[test]
    fn generator_permutations_are_bijections() {
        let a = Ambient::new(GroupSpec::new(Family::SU, 4, 1).unwrap(), ThetaKind::AdIpq { p: 2, q: 2 }, None).unwrap();
        let p = SearchPool::build(&SpaceModel::full(a), 4, true, 1000).unwrap();
        assert_eq!(p.len(), 6);
        for perm in p.generator_permutations() {
            let mut seen = perm.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), p.len());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = Ambient::new(GroupSpec::new(Family::SO, 8, 1).unwrap(), ThetaKind::AdJn, None).unwrap();
        let err = SearchPool::build(&SpaceModel::full(a), 4, true, 50).unwrap_err();
        assert_eq!(err, Error::PoolLimit { cap: 50 });
    }
}
