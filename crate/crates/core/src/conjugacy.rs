//! Exact conjugacy of antipodal sets through their joint eigenspace profiles.
//!
//! For X through the origin with commuting exact involutions φ(X), two sets are
//! G-translates when an element of H intertwines the two families. Intertwiners
//! between commuting involution families exist exactly when the joint eigenspace
//! dimensions agree under some matching of the families; the determinant is then
//! repaired inside the common centralizer when possible.

use crate::group::{Family, ThetaKind};
use crate::linalg::{matrix_rank, simultaneous_blocks};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarKind};
use crate::space::{AntipodalSet, CosetPoint, SpaceModel};

/// Involution λ·C commuting with H, when θ = Ad(C) on G and C² = ±I.
///
/// On SU(2) complex conjugation is Ad(J), so an antilinear θ there acts as Ad(C·J).
pub(crate) fn structure_involution(space: &SpaceModel) -> Option<Matrix> {
    let a = &space.ambient;
    if space.is_group_form() {
        return None;
    }
    let c = match (a.theta.antilinear, a.group.family, a.n()) {
        (false, _, _) => a.theta.conjugator.clone(),
        (true, Family::SU, 2) => a.theta.conjugator.mul(&Matrix::j_block(1, a.kind(), a.conductor)),
        (true, _, _) => return None,
    };
    let c = &c;
    let c2 = c.mul(c);
    if c2.is_identity() {
        Some(c.clone())
    } else if c2.neg().is_identity() && a.kind() == ScalarKind::Cyclotomic {
        Some(c.scale(&Scalar::root_of_unity(a.conductor, 4, 1)))
    } else {
        None
    }
}

/// Joint eigenspaces as (sign vector over the family, dimension) rows, structure column last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    rows: Vec<(Vec<i8>, usize)>,
    columns: usize,
}

fn family_of(space: &SpaceModel, x: &AntipodalSet) -> Option<Vec<Matrix>> {
    let a = &space.ambient;
    if a.kernel().len() > 1 || !space.is_full() {
        return None;
    }
    let fam: Vec<Matrix> = if space.is_group_form() {
        x.points.iter().map(|p| p.rep.clone()).collect()
    } else {
        x.points.iter().map(|p| space.phi_raw(&p.rep)).collect()
    };
    let exact = fam.iter().all(|f| f.mul(f).is_identity())
        && fam.iter().enumerate().all(|(i, f)| fam[i + 1..].iter().all(|g| f.commutes_with(g)));
    exact.then_some(fam)
}

/// Profile of a set containing the origin, when its φ-values are exact commuting involutions.
pub fn profile(space: &SpaceModel, x: &AntipodalSet) -> Option<Profile> {
    let a = &space.ambient;
    let mut fam = family_of(space, x)?;
    if let Some(s) = structure_involution(space) {
        fam.push(s);
    }
    let blocks = simultaneous_blocks(&fam, a.n(), a.kind(), a.conductor);
    let rows = blocks
        .iter()
        .map(|p| {
            let signs = fam.iter().map(|f| if f.mul(p) == *p { 1 } else { -1 }).collect();
            (signs, matrix_rank(p))
        })
        .collect();
    Some(Profile { rows, columns: fam.len() })
}

/// Whether the determinant of an intertwiner may need a reflection to land in H.
fn needs_odd_block(space: &SpaceModel) -> bool {
    let a = &space.ambient;
    match a.group.family {
        Family::SO => !matches!(a.theta.kind, ThetaKind::AdJn),
        Family::SU => a.theta.kind == ThetaKind::Tau,
        Family::Sp => false,
    }
}

fn projected(rows: &[(Vec<i8>, usize)], cols: &[usize]) -> Vec<(Vec<i8>, usize)> {
    let mut out: Vec<_> = rows.iter().map(|(s, d)| (cols.iter().map(|&c| s[c]).collect(), *d)).collect();
    out.sort();
    out
}

/// A column matching with equal row multisets; the final structure column stays fixed.
fn profiles_match(x: &Profile, y: &Profile, fixed_last: bool) -> bool {
    if x.columns != y.columns || x.rows.len() != y.rows.len() {
        return false;
    }
    let n = x.columns;
    let free = if fixed_last { n - 1 } else { n };
    let mut xs: Vec<usize> = Vec::new();
    let mut ys: Vec<usize> = Vec::new();
    if fixed_last {
        xs.push(n - 1);
        ys.push(n - 1);
        if projected(&x.rows, &xs) != projected(&y.rows, &ys) {
            return false;
        }
    }
    fn go(x: &Profile, y: &Profile, free: usize, xs: &mut Vec<usize>, ys: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let t = xs.len() - (x.columns - free);
        if t == free {
            return true;
        }
        xs.push(t);
        for c in 0..free {
            if used[c] {
                continue;
            }
            ys.push(c);
            if projected(&x.rows, xs) == projected(&y.rows, ys) {
                used[c] = true;
                if go(x, y, free, xs, ys, used) {
                    return true;
                }
                used[c] = false;
            }
            ys.pop();
        }
        xs.pop();
        false
    }
    go(x, y, free, &mut xs, &mut ys, &mut vec![false; free])
}

/// Proves that Y is a G-translate of X; false means unproven, not disproven.
pub fn proven_translates(space: &SpaceModel, x: &AntipodalSet, y: &AntipodalSet) -> bool {
    if x.len() != y.len() || !space.contains_origin(x) {
        return false;
    }
    let Some(px) = profile(space, x) else { return false };
    if needs_odd_block(space) && !px.rows.iter().any(|(_, d)| d % 2 == 1) {
        return false;
    }
    let fixed = structure_involution(space).is_some();
    let a = &space.ambient;
    y.points.iter().any(|q| {
        let back = a.inverse(&q.rep);
        let moved: Vec<CosetPoint> = y.points.iter().map(|p| CosetPoint::new(back.mul(&p.rep))).collect();
        let Ok(moved) = space.make_set(moved) else { return false };
        profile(space, &moved).is_some_and(|py| profiles_match(&px, &py, fixed))
    })
}
