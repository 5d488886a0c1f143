//! Greedy and exhaustive searches for maximal antipodal sets inside a pool.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::conjugacy::proven_translates;
use crate::error::{Error, Result};
use crate::pool::SearchPool;
use crate::space::{AntipodalSet, CosetPoint, Method, SpaceModel};

/// Upper bound on the orbit of a point set explored during translation dedup.
pub const ORBIT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BitSet(SmallVec<[u64; 4]>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(SmallVec::from_elem(0, n.div_ceil(64)))
    }
    fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        (0..n).for_each(|i| b.insert(i));
        b
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// Pool points antipodal to the origin, with pairwise antipodality as edges.
#[derive(Debug, Clone)]
pub struct NeighborGraph {
    pub nodes: Vec<usize>,
    adj: Vec<BitSet>,
}

impl NeighborGraph {
    pub fn build(pool: &SearchPool) -> Self {
        let nodes: Vec<usize> = (1..pool.len()).filter(|&i| pool.antipodal(0, i)).collect();
        let mut adj = vec![BitSet::new(nodes.len()); nodes.len()];
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if pool.antipodal(nodes[a], nodes[b]) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        NeighborGraph { nodes, adj }
    }

    /// All maximal cliques, as sorted node positions.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let n = self.nodes.len();
        self.bron_kerbosch(&mut Vec::new(), BitSet::full(n), BitSet::new(n), &mut out);
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: BitSet, x: BitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p.iter().chain(x.iter()).max_by_key(|&u| p.and(&self.adj[u]).count()).expect("nonempty");
        let mut p = p;
        let mut x = x;
        for v in p.and_not(&self.adj[pivot]).iter().collect::<Vec<_>>() {
            r.push(v);
            self.bron_kerbosch(r, p.and(&self.adj[v]), x.and(&self.adj[v]), out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        self.max_clique(0, BitSet::full(self.nodes.len()), &mut best);
        best
    }

    fn max_clique(&self, size: usize, p: BitSet, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + p.count() <= *best {
            return;
        }
        let mut p = p;
        for v in p.iter().collect::<Vec<_>>() {
            if size + p.count() <= *best {
                return;
            }
            self.max_clique(size + 1, p.and(&self.adj[v]), best);
            p.remove(v);
        }
    }
}

fn require_antipodal(space: &SpaceModel, x: &AntipodalSet) -> Result<()> {
    if space.is_antipodal_set(x, Method::Pairwise)?.antipodal {
        Ok(())
    } else {
        Err(Error::NotAntipodal)
    }
}

/// Greedy extension visiting pool points in the given order.
pub fn extend_in_order(space: &SpaceModel, x: &AntipodalSet, pool: &SearchPool, order: &[usize]) -> Result<AntipodalSet> {
    require_antipodal(space, x)?;
    let mut reps: Vec<_> = x.points.iter().map(|p| p.rep.clone()).collect();
    let mut points = x.points.clone();
    for &i in order {
        let r = pool.rep(i);
        let p = pool.point(i);
        if points.iter().any(|q| space.coset_eq(q, &p)) {
            continue;
        }
        if reps.iter().all(|q| space.pair_raw(q, r)) {
            reps.push(r.clone());
            points.push(p);
        }
    }
    space.make_set(points)
}

/// Greedy extension in pool order; the result admits no pool extension.
pub fn extend_to_maximal(space: &SpaceModel, x: &AntipodalSet, pool: &SearchPool) -> Result<AntipodalSet> {
    let order: Vec<usize> = (0..pool.len()).collect();
    extend_in_order(space, x, pool, &order)
}

/// Whether no pool point outside X is antipodal to all of X.
pub fn is_pool_maximal(space: &SpaceModel, x: &AntipodalSet, pool: &SearchPool) -> bool {
    pool_extension(space, x, pool).is_none()
}

/// A pool point extending X, if any.
pub fn pool_extension(space: &SpaceModel, x: &AntipodalSet, pool: &SearchPool) -> Option<CosetPoint> {
    (0..pool.len()).map(|i| pool.point(i)).find(|p| {
        !x.points.iter().any(|q| space.coset_eq(q, p)) && x.points.iter().all(|q| space.pair_raw(&q.rep, &p.rep))
    })
}

#[derive(Debug, Clone)]
pub struct TwoNumber {
    pub value: usize,
    pub set: AntipodalSet,
    /// Best size reached by the seeded greedy restarts alone.
    pub greedy_value: usize,
    pub restarts: usize,
}

/// Largest antipodal set through the origin: seeded greedy restarts, then an exact clique search.
pub fn two_number(space: &SpaceModel, pool: &SearchPool, restarts: usize, seed: u64) -> Result<TwoNumber> {
    let start = space.make_set(vec![space.origin()])?;
    let mut order: Vec<usize> = (0..pool.len()).collect();
    let mut best = extend_in_order(space, &start, pool, &order)?;
    for r in 1..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        order.shuffle(&mut rng);
        let cand = extend_in_order(space, &start, pool, &order)?;
        if cand.len() > best.len() {
            best = cand;
        }
    }
    let greedy_value = best.len();
    let graph = NeighborGraph::build(pool);
    if graph.clique_number() + 1 > best.len() {
        let clique = graph.maximal_cliques().into_iter().max_by_key(Vec::len).expect("at least the empty clique");
        best = set_from_nodes(space, pool, &graph, &clique)?;
    }
    Ok(TwoNumber { value: best.len(), set: best, greedy_value, restarts: restarts.max(1) })
}

fn set_from_nodes(space: &SpaceModel, pool: &SearchPool, g: &NeighborGraph, clique: &[usize]) -> Result<AntipodalSet> {
    let mut pts = vec![pool.point(0)];
    pts.extend(clique.iter().map(|&v| pool.point(g.nodes[v])));
    space.make_set(pts)
}

fn apply(perm: &[u32], set: &[u32]) -> Vec<u32> {
    let mut s: Vec<u32> = set.iter().map(|&i| perm[i as usize]).collect();
    s.sort_unstable();
    s
}

/// The orbit of an index set under the pool generators, as sorted index vectors.
fn set_orbit(pool: &SearchPool, set: &[u32]) -> Result<HashSet<Vec<u32>>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut s = set.to_vec();
    s.sort_unstable();
    seen.insert(s.clone());
    queue.push_back(s);
    while let Some(s) = queue.pop_front() {
        for perm in pool.generator_permutations() {
            let t = apply(perm, &s);
            if seen.insert(t.clone()) {
                if seen.len() > ORBIT_CAP {
                    return Err(Error::PoolLimit { cap: ORBIT_CAP });
                }
                queue.push_back(t);
            }
        }
    }
    Ok(seen)
}

/// Pool-maximal sets through the origin, one per class; pool translations and proven
/// G-conjugacy both merge classes.
pub fn enumerate_maximal_classes(space: &SpaceModel, pool: &SearchPool) -> Result<Vec<AntipodalSet>> {
    let graph = NeighborGraph::build(pool);
    let mut cliques = graph.maximal_cliques();
    cliques.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut covered: HashSet<Vec<u32>> = HashSet::new();
    let mut classes = Vec::new();
    for c in cliques {
        let mut idx: Vec<u32> = std::iter::once(0).chain(c.iter().map(|&v| graph.nodes[v] as u32)).collect();
        idx.sort_unstable();
        if covered.contains(&idx) {
            continue;
        }
        covered.extend(set_orbit(pool, &idx)?);
        let set = set_from_nodes(space, pool, &graph, &c)?;
        if !classes.iter().any(|x| proven_translates(space, x, &set)) {
            classes.push(set);
        }
    }
    Ok(classes)
}

/// Exhaustive search over all antipodal pool subsets of size at most `max_size`.
pub fn brute_force_max(pool: &SearchPool, max_size: usize) -> usize {
    let n = pool.len();
    let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| pool.antipodal(i, j)).collect()).collect();
    fn go(adj: &[Vec<bool>], cur: &mut Vec<usize>, from: usize, cap: usize, best: &mut usize) {
        *best = (*best).max(cur.len());
        if cur.len() == cap {
            return;
        }
        for v in from..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                go(adj, cur, v + 1, cap, best);
                cur.pop();
            }
        }
    }
    let mut best = 0;
    go(&adj, &mut Vec::new(), 0, max_size, &mut best);
    best
}

/// Pool indices of the points of X, all of which must lie in the pool.
pub fn pool_indices(pool: &SearchPool, x: &AntipodalSet) -> Option<Vec<usize>> {
    x.points.iter().map(|p| pool.find(p)).collect()
}

/// Permutations of X induced by pool elements preserving X.
#[derive(Debug, Clone)]
pub struct WeylAction {
    pub order: usize,
    /// Each permutation sends position k of X to position perm[k].
    pub elements: Vec<Vec<usize>>,
}

/// The pool-level Weyl group of a pool-maximal X acting on ψ(X).
pub fn weyl_pool(space: &SpaceModel, x: &AntipodalSet, pool: &SearchPool) -> Result<WeylAction> {
    if !is_pool_maximal(space, x, pool) {
        return Err(Error::NotMaximal);
    }
    let idx = pool_indices(pool, x).ok_or(Error::NotMaximal)?;
    let base: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
    let mut key = base.clone();
    key.sort_unstable();
    let mut transport: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    transport.insert(key.clone(), base.clone());
    let mut queue = VecDeque::from([key]);
    let mut schreier: HashSet<Vec<usize>> = HashSet::new();
    while let Some(s) = queue.pop_front() {
        let t = transport[&s].clone();
        for perm in pool.generator_permutations() {
            let img: Vec<u32> = t.iter().map(|&i| perm[i as usize]).collect();
            let mut k = img.clone();
            k.sort_unstable();
            match transport.get(&k) {
                Some(u) => {
                    let pos: HashMap<u32, usize> = u.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                    let sigma: Vec<usize> = img.iter().map(|i| pos[i]).collect();
                    schreier.insert(sigma);
                }
                None => {
                    if transport.len() >= ORBIT_CAP {
                        return Err(Error::PoolLimit { cap: ORBIT_CAP });
                    }
                    transport.insert(k.clone(), img);
                    queue.push_back(k);
                }
            }
        }
    }
    let elements = close_permutations(idx.len(), schreier.into_iter().collect());
    Ok(WeylAction { order: elements.len(), elements })
}

fn close_permutations(n: usize, gens: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Ambient, Family, GroupSpec, ThetaKind};

    fn setup(f: Family, n: usize, t: ThetaKind) -> (SpaceModel, SearchPool) {
        let s = SpaceModel::full(Ambient::new(GroupSpec::new(f, n, 1).unwrap(), t, None).unwrap());
        let p = SearchPool::build(&s, 4, true, 200_000).unwrap();
        (s, p)
    }

    #[test]
    fn greedy_sizes() {
        for (f, n, t, want) in [
            (Family::SU, 2, ThetaKind::Tau, 2),
            (Family::SU, 4, ThetaKind::AdIpq { p: 2, q: 2 }, 6),
            (Family::Sp, 2, ThetaKind::AdiI, 4),
        ] {
            let (s, p) = setup(f, n, t);
            let o = s.make_set(vec![s.origin()]).unwrap();
            let x = extend_to_maximal(&s, &o, &p).unwrap();
            assert_eq!(x.len(), want, "{f:?}({n})");
            assert!(is_pool_maximal(&s, &x, &p));
        }
    }

    #[test]
    fn two_number_and_classes() {
        let (s, p) = setup(Family::SU, 3, ThetaKind::Tau);
        assert_eq!(two_number(&s, &p, 8, 0).unwrap().value, 4);
        assert_eq!(enumerate_maximal_classes(&s, &p).unwrap().len(), 1);
        assert_eq!(brute_force_max(&p, 6), 4);
    }

    #[test]
    fn weyl_of_origin_and_su3() {
        let (s, p) = setup(Family::SU, 2, ThetaKind::AdIpq { p: 1, q: 1 });
        let o = s.make_set(vec![s.origin()]).unwrap();
        assert_eq!(weyl_pool(&s, &o, &p).unwrap_err(), Error::NotMaximal);
        let (s, p) = setup(Family::SU, 3, ThetaKind::Tau);
        let x = extend_to_maximal(&s, &s.make_set(vec![s.origin()]).unwrap(), &p).unwrap();
        assert_eq!(weyl_pool(&s, &x, &p).unwrap().order, 24);
    }
}
