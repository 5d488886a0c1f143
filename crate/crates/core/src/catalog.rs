//! Shipped classical symmetric spaces, their canonical antipodal sets and expected 2-numbers.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Ambient, Family, GroupSpec, ThetaKind};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::space::{AntipodalSet, CosetPoint, Oracle, OracleKind, SpaceModel, SubgroupMode};

pub const MANIFEST_VERSION: u32 = 1;
pub const OPEN_CASE_NOTE: &str = "open case, out of scope";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CartanLabel {
    AI,
    AII,
    AIII,
    BDI,
    CI,
    CII,
    DIII,
    Group,
}

impl CartanLabel {
    pub fn name(self) -> &'static str {
        match self {
            CartanLabel::AI => "AI",
            CartanLabel::AII => "AII",
            CartanLabel::AIII => "AIII",
            CartanLabel::BDI => "BDI",
            CartanLabel::CI => "CI",
            CartanLabel::CII => "CII",
            CartanLabel::DIII => "DIII",
            CartanLabel::Group => "group",
        }
    }
}

/// Explicit constructions of canonical antipodal sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recipe {
    /// Coordinate p-planes, reached by signed permutations.
    CoordinatePlanes { p: usize },
    /// Diagonal μ₄ matrices squaring to det-1 sign patterns.
    DiagonalFourthRoots,
    /// Diagonal μ₄ matrices constant on the pairs swapped by J.
    PairedFourthRoots,
    /// Diagonal matrices with entries 1 and j.
    QuaternionDiagonal,
    /// Reflections of an even number of J-planes.
    PlaneFlips,
    /// The center {±I}.
    Center,
    /// Diagonal sign matrices of determinant 1.
    DiagonalSigns,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub label: CartanLabel,
    pub group: GroupSpec,
    pub theta: ThetaKind,
    /// H = S(O(p)×O(q))⁰ via a block-determinant oracle, when set.
    pub oracle_p: Option<usize>,
    pub recipe: Option<Recipe>,
    pub expected: Option<u64>,
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn family_prefix(f: Family) -> &'static str {
    match f {
        Family::SU => "SU",
        Family::SO => "SO",
        Family::Sp => "Sp",
    }
}

fn reject(msg: String) -> Result<CatalogEntry> {
    Err(Error::SpecMismatch(msg))
}

impl CatalogEntry {
    /// SU/Sp/SO Grassmannians with θ = Ad(I_{p,q}).
    pub fn grassmannian(family: Family, p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return reject(format!("Grassmannian needs p, q >= 1, got ({p}, {q})"));
        }
        if family == Family::SO && p == q && p < 3 {
            return reject(format!("real Grassmannian with p = q needs p >= 3, got p = {p}"));
        }
        let n = p + q;
        let (label, block) = match family {
            Family::SU => (CartanLabel::AIII, "U"),
            Family::Sp => (CartanLabel::CII, "Sp"),
            Family::SO => (CartanLabel::BDI, "O"),
        };
        Ok(CatalogEntry {
            id: format!("{}{n}_mod_{block}{p}{block}{q}", family_prefix(family)),
            label,
            group: GroupSpec::new(family, n, 1)?,
            theta: ThetaKind::AdIpq { p, q },
            oracle_p: None,
            recipe: Some(Recipe::CoordinatePlanes { p }),
            expected: (p == q).then(|| binom(n as u64, p as u64)),
        })
    }

    /// SO(p+q)/S(O(p)×O(q))⁰, modelled through a block-determinant oracle.
    pub fn real_grassmannian_oriented(p: usize, q: usize) -> Result<Self> {
        if p != 1 || q < 2 {
            return reject(format!("oriented real Grassmannian oracle is shipped for p = 1 only, got ({p}, {q})"));
        }
        let n = p + q;
        Ok(CatalogEntry {
            id: format!("SO{n}_mod_SO{q}"),
            label: CartanLabel::BDI,
            group: GroupSpec::new(Family::SO, n, 1)?,
            theta: ThetaKind::AdIpq { p, q },
            oracle_p: Some(p),
            recipe: None,
            expected: None,
        })
    }

    /// G_{n,m}/G_{n,m}^τ with G_{n,m} = SU(n)/μ_m.
    pub fn ai(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m == 0 || !n.is_multiple_of(m) {
            return reject(format!("AI needs n >= 2 and m | n, got n = {n}, m = {m}"));
        }
        let id = match m {
            1 => format!("SU{n}_mod_SO{n}"),
            _ if m == n => format!("PSU{n}_tau"),
            _ => format!("G{n}_{m}_tau"),
        };
        Ok(CatalogEntry {
            id,
            label: CartanLabel::AI,
            group: GroupSpec::new(Family::SU, n, m)?,
            theta: ThetaKind::Tau,
            oracle_p: None,
            recipe: (m == 1).then_some(Recipe::DiagonalFourthRoots),
            expected: (m == 1).then(|| 1 << (n - 1)),
        })
    }

    /// G_{n,m}/G_{n,m}^{τ′} for even n.
    pub fn aii(n: usize, m: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) || m == 0 || !n.is_multiple_of(m) {
            return reject(format!("AII needs even n >= 4 and m | n, got n = {n}, m = {m}"));
        }
        let id = match m {
            1 => format!("SU{n}_mod_Sp{}", n / 2),
            _ if m == n => format!("PSU{n}_taup"),
            _ => format!("G{n}_{m}_taup"),
        };
        Ok(CatalogEntry {
            id,
            label: CartanLabel::AII,
            group: GroupSpec::new(Family::SU, n, m)?,
            theta: ThetaKind::TauPrime,
            oracle_p: None,
            recipe: (m == 1).then_some(Recipe::PairedFourthRoots),
            expected: (m == 1).then(|| 1 << (n / 2)),
        })
    }

    /// Sp(n)/U(n), or its adjoint form when m = 2.
    pub fn ci(n: usize, m: usize) -> Result<Self> {
        if n == 0 || !(m == 1 || m == 2) {
            return reject(format!("CI needs n >= 1 and m in {{1, 2}}, got n = {n}, m = {m}"));
        }
        Ok(CatalogEntry {
            id: format!("{}Sp{n}_mod_U{n}", if m == 2 { "P" } else { "" }),
            label: CartanLabel::CI,
            group: GroupSpec::new(Family::Sp, n, m)?,
            theta: ThetaKind::AdiI,
            oracle_p: None,
            recipe: (m == 1).then_some(Recipe::QuaternionDiagonal),
            expected: (m == 1).then(|| 1 << n),
        })
    }

    /// SO(2n)/U(n) with n >= 3, or its adjoint form when m = 2.
    pub fn diii(n: usize, m: usize) -> Result<Self> {
        if n < 3 || !(m == 1 || m == 2) {
            return reject(format!("DIII needs n >= 3 and m in {{1, 2}}, got n = {n}, m = {m}"));
        }
        Ok(CatalogEntry {
            id: format!("{}SO{}_mod_U{n}", if m == 2 { "P" } else { "" }, 2 * n),
            label: CartanLabel::DIII,
            group: GroupSpec::new(Family::SO, 2 * n, m)?,
            theta: ThetaKind::AdJn,
            oracle_p: None,
            recipe: (m == 1).then_some(Recipe::PlaneFlips),
            expected: (m == 1).then(|| 1 << (n - 1)),
        })
    }

    /// A compact group as a symmetric space with s_x(y) = x·y⁻¹·x.
    pub fn group_form(family: Family, n: usize) -> Result<Self> {
        let recipe = match (family, n) {
            (Family::SU, 2) | (Family::Sp, 1) => Some(Recipe::Center),
            (Family::SO, 3) => Some(Recipe::DiagonalSigns),
            _ => None,
        };
        Ok(CatalogEntry {
            id: format!("{}{n}_group", family_prefix(family)),
            label: CartanLabel::Group,
            group: GroupSpec::new(family, n, 1)?,
            theta: ThetaKind::GroupForm,
            oracle_p: None,
            recipe,
            expected: None,
        })
    }

    pub fn ambient(&self) -> Result<Ambient> {
        Ambient::new(self.group, self.theta, None)
    }

    pub fn space(&self) -> Result<SpaceModel> {
        let ambient = self.ambient()?;
        let Some(p) = self.oracle_p else {
            return Ok(SpaceModel::full(ambient));
        };
        let n = ambient.n();
        let c = ambient.conductor;
        let flip = Matrix::diag((0..n).map(|i| Scalar::int(c, if i == 0 || i == p { -1 } else { 1 })).collect());
        let oracle = Oracle { kind: OracleKind::BlockDetSign { p }, fiber: vec![ambient.identity(), flip] };
        Ok(SpaceModel::new(ambient, SubgroupMode::IdentityComponentWithOracle(oracle)))
    }

    pub fn is_adjoint(&self) -> bool {
        let g = &self.group;
        match g.family {
            Family::SU => g.m == g.n,
            _ => g.m == 2,
        }
    }
}

/// Closed-form 2-number, or None when no closed form is shipped.
pub fn expected_two_number(entry: &CatalogEntry) -> Option<u64> {
    entry.expected
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|k| subsets(n, k)).collect()
}

/// Signed permutation matrix in G sending the first p coordinate axes onto `plane`.
fn plane_rep(a: &Ambient, plane: &[usize]) -> Matrix {
    let n = a.n();
    let rest = (0..n).filter(|i| !plane.contains(i));
    let sigma: Vec<usize> = plane.iter().copied().chain(rest).collect();
    let id = a.identity();
    let zero = id.get(0, 0).zero_like();
    let mut m = Matrix::from_fn(n, |_, _| zero.clone());
    for (k, &s) in sigma.iter().enumerate() {
        m.set(s, k, id.get(0, 0).clone());
    }
    if crate::matrix::permutation_sign(&sigma) < 0 {
        let s0 = sigma[0];
        m.set(s0, 0, -m.get(s0, 0));
    }
    m
}

fn diag_from(a: &Ambient, f: impl Fn(usize) -> Scalar) -> Matrix {
    Matrix::diag((0..a.n()).map(f).collect())
}

/// The explicit antipodal set attached to the entry's recipe.
pub fn canonical_maximal_set(entry: &CatalogEntry) -> Result<AntipodalSet> {
    let recipe = entry.recipe.ok_or_else(|| Error::NoRecipe(entry.id.clone()))?;
    let space = entry.space()?;
    let a = &space.ambient;
    let c = a.conductor;
    let n = a.n();
    let i4 = |k: i64| Scalar::root_of_unity(c, 4, k);
    let reps: Vec<Matrix> = match recipe {
        Recipe::CoordinatePlanes { p } => subsets(n, p).iter().map(|s| plane_rep(a, s)).collect(),
        Recipe::DiagonalFourthRoots => all_subsets(n)
            .into_iter()
            .filter(|s| s.len() % 2 == 0)
            .map(|s| {
                let fix = s.len() % 4 == 2;
                diag_from(a, |k| {
                    let base = if s.contains(&k) { i4(1) } else { i4(0) };
                    if fix && k == 0 { -&base } else { base }
                })
            })
            .collect(),
        Recipe::PairedFourthRoots => {
            let h = n / 2;
            all_subsets(h)
                .into_iter()
                .filter(|s| s.len() % 2 == 0)
                .map(|s| diag_from(a, |k| if s.contains(&(k % h)) { i4(1) } else { i4(0) }))
                .collect()
        }
        Recipe::QuaternionDiagonal => all_subsets(n)
            .into_iter()
            .map(|s| diag_from(a, |k| if s.contains(&k) { Scalar::quat(0, 0, 1, 0) } else { Scalar::quat(1, 0, 0, 0) }))
            .collect(),
        Recipe::PlaneFlips => {
            let h = n / 2;
            all_subsets(h)
                .into_iter()
                .filter(|s| s.len() % 2 == 0)
                .map(|s| diag_from(a, |k| Scalar::int(c, if k >= h && s.contains(&(k - h)) { -1 } else { 1 })))
                .collect()
        }
        Recipe::Center => vec![a.identity(), a.identity().neg()],
        Recipe::DiagonalSigns => std::iter::once(Vec::new())
            .chain(subsets(n, 2))
            .map(|s| diag_from(a, |k| Scalar::int(c, if s.contains(&k) { -1 } else { 1 })))
            .collect(),
    };
    let points = reps.into_iter().map(|r| space.point(&r)).collect::<Result<Vec<CosetPoint>>>()?;
    space.make_set(points)
}

/// Every shipped entry, in manifest order.
pub fn all_entries() -> Vec<CatalogEntry> {
    let built = [
        CatalogEntry::grassmannian(Family::SU, 1, 1),
        CatalogEntry::grassmannian(Family::SU, 1, 2),
        CatalogEntry::grassmannian(Family::SU, 2, 2),
        CatalogEntry::grassmannian(Family::Sp, 1, 1),
        CatalogEntry::grassmannian(Family::Sp, 1, 2),
        CatalogEntry::grassmannian(Family::Sp, 2, 2),
        CatalogEntry::grassmannian(Family::SO, 1, 3),
        CatalogEntry::grassmannian(Family::SO, 3, 3),
        CatalogEntry::real_grassmannian_oriented(1, 3),
        CatalogEntry::ai(2, 1),
        CatalogEntry::ai(3, 1),
        CatalogEntry::ai(4, 1),
        CatalogEntry::ai(4, 2),
        CatalogEntry::ai(3, 3),
        CatalogEntry::aii(4, 1),
        CatalogEntry::aii(4, 2),
        CatalogEntry::ci(1, 1),
        CatalogEntry::ci(2, 1),
        CatalogEntry::ci(3, 1),
        CatalogEntry::ci(2, 2),
        CatalogEntry::diii(3, 1),
        CatalogEntry::diii(4, 1),
        CatalogEntry::diii(4, 2),
        CatalogEntry::group_form(Family::SU, 2),
        CatalogEntry::group_form(Family::SO, 3),
        CatalogEntry::group_form(Family::Sp, 1),
    ];
    built.into_iter().map(|e| e.expect("shipped parameters satisfy their constraints")).collect()
}

#[derive(Debug, Clone)]
pub struct Listing {
    pub entries: Vec<CatalogEntry>,
    pub note: Option<&'static str>,
}

pub const FAMILY_FILTERS: [&str; 11] = ["AI", "AII", "AIII", "BDI", "CI", "CII", "DIII", "group", "grassmannian", "spin", "exceptional"];

/// Entries matching a Cartan label, "group", "grassmannian", or an open family.
pub fn catalog_list(filter: Option<&str>) -> Result<Listing> {
    let Some(f) = filter else {
        return Ok(Listing { entries: all_entries(), note: None });
    };
    let key = f.trim();
    if ["spin", "half-spin", "exceptional"].iter().any(|k| k.eq_ignore_ascii_case(key)) {
        return Ok(Listing { entries: Vec::new(), note: Some(OPEN_CASE_NOTE) });
    }
    if !FAMILY_FILTERS.iter().any(|k| k.eq_ignore_ascii_case(key)) {
        return Err(Error::Parse(format!("unknown family {key:?}; valid: {}", FAMILY_FILTERS.join(", "))));
    }
    let entries = all_entries()
        .into_iter()
        .filter(|e| {
            e.label.name().eq_ignore_ascii_case(key)
                || (key.eq_ignore_ascii_case("grassmannian") && matches!(e.theta, ThetaKind::AdIpq { .. }))
        })
        .collect();
    Ok(Listing { entries, note: None })
}

pub fn lookup(id: &str) -> Result<CatalogEntry> {
    let all = all_entries();
    all.iter().find(|e| e.id == id).cloned().ok_or_else(|| Error::UnknownSpace {
        id: id.to_string(),
        valid: all.iter().map(|e| e.id.as_str()).collect::<Vec<_>>().join(", "),
    })
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "id": e.id,
        "label": e.label.name(),
        "group": e.group,
        "theta": e.theta,
        "subgroup": if e.oracle_p.is_some() { "identity_component" } else { "full_fixed_group" },
        "recipe": e.recipe,
        "expected_two_number": e.expected,
        "adjoint": e.is_adjoint(),
    })
}

/// Literature cardinalities for exceptional spaces; no model here reproduces them.
pub const UNVERIFIED_EXCEPTIONAL: [(&str, &str, &[u64]); 4] = [
    ("EIV", "E6 / F4", &[4]),
    ("EI", "E6 / PSp(4)", &[28, 64]),
    ("EVII", "E7 / ((E6 x U(1)) / Z3)", &[56]),
    ("EV", "E7 / (SU(8) / {+-1})", &[72, 56, 128]),
];

/// Versioned JSON manifest of the catalog.
pub fn manifest() -> Value {
    json!({
        "version": MANIFEST_VERSION,
        "entries": all_entries().iter().map(entry_json).collect::<Vec<_>>(),
        "open_cases": { "families": ["spin", "half-spin", "exceptional"], "note": OPEN_CASE_NOTE },
        "unverified_literature_values": UNVERIFIED_EXCEPTIONAL
            .iter()
            .map(|(l, s, v)| json!({"label": l, "space": s, "cardinalities": v, "verified": false}))
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Method;

    #[test]
    fn canonical_sets_are_antipodal() {
        for e in all_entries() {
            let Ok(x) = canonical_maximal_set(&e) else { continue };
            let s = e.space().unwrap();
            assert!(s.is_antipodal_set(&x, Method::Pairwise).unwrap().antipodal, "{}", e.id);
            if !s.is_group_form() && s.is_full() {
                assert!(s.is_antipodal_set(&x, Method::PhiCriterion).unwrap().antipodal, "{}", e.id);
            }
        }
    }

    #[test]
    fn canonical_sizes() {
        let size = |id: &str| canonical_maximal_set(&lookup(id).unwrap()).unwrap().len();
        assert_eq!(size("SU3_mod_SO3"), 4);
        assert_eq!(size("SU2_mod_U1U1"), 2);
        assert_eq!(size("Sp1_mod_U1"), 2);
        assert_eq!(size("SO6_mod_O3O3"), 20);
        assert_eq!(size("SO8_mod_U4"), 8);
        assert_eq!(size("SO3_group"), 4);
    }

    #[test]
    fn constraints_and_filters() {
        assert!(CatalogEntry::grassmannian(Family::SO, 2, 2).is_err());
        assert!(CatalogEntry::ai(4, 3).is_err());
        assert!(CatalogEntry::diii(2, 1).is_err());
        let ai = catalog_list(Some("AI")).unwrap();
        assert!(ai.entries.iter().all(|e| e.theta == ThetaKind::Tau && e.group.n % e.group.m == 0));
        let ci = catalog_list(Some("CI")).unwrap();
        assert!(ci.entries.iter().all(|e| e.theta == ThetaKind::AdiI));
        let spin = catalog_list(Some("spin")).unwrap();
        assert!(spin.entries.is_empty() && spin.note == Some(OPEN_CASE_NOTE));
        assert!(matches!(lookup("nope"), Err(Error::UnknownSpace { .. })));
        assert_eq!(expected_two_number(&lookup("SO8_mod_U4").unwrap()), Some(8));
        assert_eq!(expected_two_number(&lookup("SU4_mod_U2U2").unwrap()), Some(6));
        assert_eq!(expected_two_number(&lookup("PSU3_tau").unwrap()), None);
    }
}
