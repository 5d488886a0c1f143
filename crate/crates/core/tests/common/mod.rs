//! Exact identities checked on random words in the pool generators.
#![allow(dead_code)]

use std::sync::OnceLock;

use antipodal::catalog::lookup;
use antipodal::group::ExtendedElement;
use antipodal::matrix::Matrix;
use antipodal::pool::generator_set;
use antipodal::space::{CosetPoint, SpaceModel};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const SPACES: [&str; 7] = ["SU2_mod_U1U1", "SU3_mod_SO3", "SU4_mod_Sp2", "Sp2_mod_U2", "Sp2_mod_Sp1Sp1", "SO4_mod_O1O3", "SO6_mod_U3"];
pub const GROUP_FORMS: [&str; 3] = ["SU2_group", "SO3_group", "Sp1_group"];
pub const CASES: u32 = 1000;

pub struct Fixture {
    pub space: SpaceModel,
    gens: Vec<Matrix>,
}

fn fixture(id: &str) -> Fixture {
    let s = lookup(id).unwrap().space().unwrap();
    let (space, mut gens) = generator_set(&s, 8, false).unwrap();
    let inverses: Vec<Matrix> = gens.iter().map(|g| space.ambient.inverse(g)).collect();
    gens.extend(inverses);
    Fixture { space, gens }
}

/// Symmetric-space fixtures first, then the group forms.
pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| SPACES.iter().chain(&GROUP_FORMS).map(|id| fixture(id)).collect())
}

pub fn word(f: &Fixture, w: &[usize]) -> Matrix {
    let a = &f.space.ambient;
    let g = w.iter().fold(a.identity(), |acc, &i| acc.mul(&f.gens[i % f.gens.len()]));
    a.canonical_rep(&g)
}

pub fn words() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 0..12)
}

type Check = std::result::Result<(), TestCaseError>;

pub fn phi_equivariance(k: usize, gw: &[usize], xw: &[usize]) -> Check {
    let f = &fixtures()[k];
    let (s, a) = (&f.space, &f.space.ambient);
    let (g, x) = (word(f, gw), word(f, xw));
    let lhs = s.cartan_phi(&CosetPoint::new(a.canonical_rep(&g.mul(&x)))).unwrap();
    let phi_x = s.cartan_phi(&CosetPoint::new(x)).unwrap();
    let rhs = g.mul(&phi_x).mul(&a.inverse(&a.theta_apply(&g).unwrap()));
    prop_assert!(a.eq_mod_kernel(&lhs, &rhs));
    Ok(())
}

pub fn theta_inverts_phi(k: usize, xw: &[usize]) -> Check {
    let f = &fixtures()[k];
    let (s, a) = (&f.space, &f.space.ambient);
    let phi = s.cartan_phi(&CosetPoint::new(word(f, xw))).unwrap();
    prop_assert!(a.eq_mod_kernel(&a.theta_apply(&phi).unwrap(), &a.inverse(&phi)));
    Ok(())
}

pub fn symmetry_involutive(k: usize, xw: &[usize], yw: &[usize]) -> Check {
    let f = &fixtures()[k];
    let s = &f.space;
    let (x, y) = (CosetPoint::new(word(f, xw)), CosetPoint::new(word(f, yw)));
    let once = s.geodesic_symmetry(&x, &y).unwrap();
    prop_assert!(s.coset_eq(&s.geodesic_symmetry(&x, &once).unwrap(), &y));
    prop_assert!(s.coset_eq(&s.geodesic_symmetry(&x, &x).unwrap(), &x));
    Ok(())
}

pub fn ext_mul_associative(k: usize, w: &[Vec<usize>; 3], e: [bool; 3]) -> Check {
    let f = &fixtures()[k];
    let a = &f.space.ambient;
    let [s, t, u]: [ExtendedElement; 3] = std::array::from_fn(|i| a.ext(&word(f, &w[i]), e[i]));
    let left = a.ext_mul(&a.ext_mul(&s, &t).unwrap(), &u).unwrap();
    let right = a.ext_mul(&s, &a.ext_mul(&t, &u).unwrap()).unwrap();
    prop_assert_eq!(a.ext_key(&left), a.ext_key(&right));
    Ok(())
}

/// Involution drawn from θ̄, ψ(x), an exact φ(x), or a diagonal sign matrix.
fn involution(f: &Fixture, xw: &[usize], pick: u8, q: usize) -> ExtendedElement {
    let (s, a) = (&f.space, &f.space.ambient);
    let x = CosetPoint::new(word(f, xw));
    let phi = s.cartan_phi(&x).unwrap();
    match pick {
        0 => a.theta_bar(),
        1 if a.ext_is_involution(&a.ext(&phi, false)).unwrap() => a.ext(&phi, false),
        2 => {
            let n = a.n();
            let d = Matrix::ipq(n - q.min(n), q.min(n), a.kind(), a.conductor);
            match [d.clone(), d.neg()].into_iter().find(|m| a.contains(m).unwrap()) {
                Some(m) => a.ext(&m, false),
                None => a.theta_bar(),
            }
        }
        _ => s.psi(&x).unwrap(),
    }
}

pub fn signature_invariant(k: usize, xw: &[usize], hw: &[usize], outer: bool, pick: u8, q: usize) -> Check {
    let f = &fixtures()[k];
    let a = &f.space.ambient;
    let t = involution(f, xw, pick, q);
    let h = a.ext(&word(f, hw), outer);
    let conj = a.ext_mul(&a.ext_mul(&h, &t).unwrap(), &a.ext_inverse(&h)).unwrap();
    prop_assert_eq!(a.class_signature(&conj).unwrap(), a.class_signature(&t).unwrap());
    Ok(())
}

fn fmt<T: std::fmt::Debug>(r: std::result::Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e}"))
}

/// Runs all five suites with `cases` instances each; returns (suite, outcome).
pub fn run_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let cfg = || TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let m = SPACES.len();
    let all = SPACES.len() + GROUP_FORMS.len();
    vec![
        ("phi equivariance", fmt(cfg().run(&(0..m, words(), words()), |(k, g, x)| phi_equivariance(k, &g, &x)))),
        ("theta inverts phi", fmt(cfg().run(&(0..m, words()), |(k, x)| theta_inverts_phi(k, &x)))),
        ("symmetry involutive", fmt(cfg().run(&(0..all, words(), words()), |(k, x, y)| symmetry_involutive(k, &x, &y)))),
        (
            "ext_mul associative",
            fmt(cfg().run(&(0..m, prop::array::uniform3(words()), prop::array::uniform3(any::<bool>())), |(k, w, e)| {
                ext_mul_associative(k, &w, e)
            })),
        ),
        (
            "signature invariant",
            fmt(cfg().run(&(0..m, words(), words(), any::<bool>(), 0..4u8, 0usize..5), |(k, x, h, o, p, q)| {
                signature_invariant(k, &x, &h, o, p, q)
            })),
        ),
    ]
}
