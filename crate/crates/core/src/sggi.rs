//! Generating tuples of involutions: the string property, Schläfli types,
//! parabolic subgroups, the intersection property and the coset poset.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::analysis::Limits;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, Point};

/// An ordered tuple of generators `(ρ0, .., ρ_{n-1})` inside an ambient group.
#[derive(Clone)]
pub struct GeneratorTuple {
    ambient: PermGroup,
    gens: Vec<Perm>,
    // p_ij = o(ρi ρj), row-major n x n.
    pair_orders: Vec<u64>,
}

impl GeneratorTuple {
    pub fn new(ambient: &PermGroup, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != ambient.degree() {
                return Err(Error::DegreeMismatch(g.degree(), ambient.degree()));
            }
        }
        let n = gens.len();
        let mut pair_orders = vec![1u64; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let o = gens[i].then(&gens[j]).order();
                pair_orders[i * n + j] = o;
                pair_orders[j * n + i] = o;
            }
        }
        Ok(GeneratorTuple {
            ambient: ambient.clone(),
            gens,
            pair_orders,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Perm> {
        self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn degree(&self) -> usize {
        self.ambient.degree()
    }

    /// `o(ρi ρj)`, with `p_ii = 1`.
    pub fn pair_order(&self, i: usize, j: usize) -> u64 {
        self.pair_orders[i * self.rank() + j]
    }

    pub fn is_string(&self) -> bool {
        is_string(self)
    }

    pub fn schlafli(&self) -> SchlafliType {
        schlafli(self)
    }

    /// The group generated by the tuple.
    pub fn generated(&self) -> PermGroup {
        PermGroup::new(self.degree(), self.gens.clone()).expect("degrees checked")
    }

    /// The tuple in reverse order.
    pub fn dual(&self) -> GeneratorTuple {
        let mut gens = self.gens.clone();
        gens.reverse();
        GeneratorTuple::new(&self.ambient, gens).expect("degrees checked")
    }

    /// Every generator conjugated by `x`.
    pub fn conjugate_by(&self, x: &Perm) -> GeneratorTuple {
        let gens = self.gens.iter().map(|g| g.conjugate_by(x)).collect();
        GeneratorTuple::new(&self.ambient, gens).expect("degrees checked")
    }
}

impl PartialEq for GeneratorTuple {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GeneratorTuple {}

impl PartialOrd for GeneratorTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gens.cmp(&other.gens)
    }
}

impl fmt::Debug for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

/// Orders of consecutive generator products `(p_1, .., p_{n-1})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchlafliType(pub Vec<u64>);

impl SchlafliType {
    pub fn reversed(&self) -> SchlafliType {
        SchlafliType(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Involutions, pairwise distinct, with non-adjacent generators commuting.
pub fn is_string(t: &GeneratorTuple) -> bool {
    let n = t.rank();
    if !t.gens.iter().all(Perm::is_involution) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if t.gens[i] == t.gens[j] {
                return false;
            }
            if j >= i + 2 && t.pair_order(i, j) != 2 {
                return false;
            }
        }
    }
    true
}

pub fn schlafli(t: &GeneratorTuple) -> SchlafliType {
    SchlafliType((1..t.rank()).map(|i| t.pair_order(i - 1, i)).collect())
}

/// `G_I`: the subgroup generated by the generators whose index is not in `omit`.
pub fn parabolic(t: &GeneratorTuple, omit: &[usize]) -> PermGroup {
    let gens = t
        .gens
        .iter()
        .enumerate()
        .filter(|(i, _)| !omit.contains(i))
        .map(|(_, g)| g.clone())
        .collect();
    PermGroup::new(t.degree(), gens).expect("degrees checked")
}

/// Recursive intersection-property test with a shared memo.
///
/// A string tuple of rank `n >= 3` has the intersection property iff both end
/// truncations have it and `G_0 ∩ G_{n-1} = G_{0,n-1}`. The last condition is
/// an order comparison, since `G_{0,n-1}` lies in both.
pub struct CGroupChecker {
    limits: Limits,
    memo: DashMap<Vec<Perm>, bool>,
}

/// Tuples of this rank or more are memoized.
const MEMO_RANK: usize = 4;

impl CGroupChecker {
    pub fn new(limits: Limits) -> Self {
        CGroupChecker {
            limits,
            memo: DashMap::new(),
        }
    }

    /// Whether a tuple with the string property satisfies the intersection
    /// property.
    pub fn check(&self, gens: &[Perm]) -> Result<bool> {
        self.check_with_order(gens, None)
    }

    /// As [`CGroupChecker::check`], with the order of the whole generated
    /// group if the caller knows it.
    pub fn check_with_order(&self, gens: &[Perm], whole: Option<u128>) -> Result<bool> {
        let n = gens.len();
        if n <= 2 {
            return Ok(gens.iter().all(Perm::is_involution)
                && (n < 2 || gens[0] != gens[1]));
        }
        if n >= MEMO_RANK {
            if let Some(v) = self.memo.get(gens) {
                return Ok(*v);
            }
        }
        let v = self.check_uncached(gens, whole)?;
        if n >= MEMO_RANK {
            self.memo.insert(gens.to_vec(), v);
        }
        Ok(v)
    }

    fn check_uncached(&self, gens: &[Perm], whole: Option<u128>) -> Result<bool> {
        let n = gens.len();
        if !self.check_with_order(&gens[1..], None)? || !self.check_with_order(&gens[..n - 1], None)? {
            return Ok(false);
        }
        let degree = gens[0].degree();
        let g0 = PermGroup::new(degree, gens[1..].to_vec())?;
        let gl = PermGroup::new(degree, gens[..n - 1].to_vec())?;
        let g0l = PermGroup::new(degree, gens[1..n - 1].to_vec())?;
        let target = g0l.order();
        // |G_0 G_{n-1}| <= |G| forces |G_0 ∩ G_{n-1}| >= |G_0| |G_{n-1}| / |G|.
        if let Some(w) = whole {
            if g0.order() * gl.order() > target * w {
                return Ok(false);
            }
        }
        let found = g0.intersection_order_up_to(&gl, target, self.limits.max_enum)?;
        Ok(found == Some(target))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Whether a tuple is a string C-group: the string property plus the
/// intersection property, checked recursively.
pub fn is_string_c_group(t: &GeneratorTuple, limits: Limits) -> Result<bool> {
    if !is_string(t) {
        return Ok(false);
    }
    CGroupChecker::new(limits).check(&t.gens)
}

pub(crate) fn closure(degree: usize, gens: &[Perm], bound: u64) -> Result<HashSet<Perm>> {
    let mut set: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    let mut frontier = vec![Perm::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if !set.contains(&y) {
                if set.len() as u64 >= bound {
                    return Err(Error::too_large("subgroup closure", set.len() as u128 + 1, bound as u128));
                }
                set.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(set)
}

/// The intersection property checked directly: for all index sets `I, J`,
/// `<ρi : i ∈ I> ∩ <ρj : j ∈ J> = <ρk : k ∈ I ∩ J>`. Subgroups are built by
/// plain closure, independent of the stabilizer chain code.
pub fn check_c2_bruteforce(t: &GeneratorTuple, limits: Limits) -> Result<bool> {
    let n = t.rank();
    if n > 16 {
        return Err(Error::too_large("rank for subset enumeration", n as u128, 16));
    }
    let subsets = 1usize << n;
    let mut sets: Vec<HashSet<Perm>> = Vec::with_capacity(subsets);
    for mask in 0..subsets {
        let gens: Vec<Perm> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| t.gens[i].clone()).collect();
        sets.push(closure(t.degree(), &gens, limits.max_enum)?);
    }
    for a in 0..subsets {
        for b in a + 1..subsets {
            let (small, big) = if sets[a].len() <= sets[b].len() {
                (&sets[a], &sets[b])
            } else {
                (&sets[b], &sets[a])
            };
            let common = small.iter().filter(|x| big.contains(*x)).count();
            if common != sets[a & b].len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The coset geometry of a tuple: `i`-faces are the right cosets of `G_i`,
/// and faces of consecutive ranks are incident when the cosets meet.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub face_counts: Vec<usize>,
    /// `incidences[i]` pairs faces of rank `i` with faces of rank `i + 1`.
    pub incidences: Vec<Vec<(u32, u32)>>,
}

impl Polytope {
    /// Number of chains `F_0 < F_1 < .. < F_{n-1}` of consecutive incident
    /// faces, which equals the group order for a string C-group.
    pub fn flag_count(&self) -> u128 {
        let Some(&first) = self.face_counts.first() else {
            return 0;
        };
        let mut ways = vec![1u128; first];
        for (i, pairs) in self.incidences.iter().enumerate() {
            let mut next = vec![0u128; self.face_counts[i + 1]];
            for &(a, b) in pairs {
                next[b as usize] += ways[a as usize];
            }
            ways = next;
        }
        ways.iter().sum()
    }
}

/// Builds the coset poset of a string C-group by labelling every element of
/// the group with its coset of each `G_i`.
pub fn build_polytope(t: &GeneratorTuple, limits: Limits) -> Result<Polytope> {
    let n = t.rank();
    let g = t.generated();
    let elements: Vec<Perm> = g.elements(limits.max_enum)?.collect();
    let chain = g.chain();
    let base = chain.base_points();
    let m = elements.len();
    // left[j][x] = index of ρj · x.
    let left: Vec<Vec<u32>> = t
        .gens
        .iter()
        .map(|r| {
            elements
                .iter()
                .map(|x| {
                    let mut images: Vec<Point> =
                        base.iter().map(|&b| x.image(r.image(b as usize)) as Point).collect();
                    chain.index_from_base_images(&mut images) as u32
                })
                .collect()
        })
        .collect();
    let mut labels: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut face_counts = Vec::with_capacity(n);
    for i in 0..n {
        let mut label = vec![u32::MAX; m];
        let mut count = 0u32;
        for start in 0..m {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            let mut stack = vec![start as u32];
            while let Some(x) = stack.pop() {
                for (j, l) in left.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let y = l[x as usize];
                    if label[y as usize] == u32::MAX {
                        label[y as usize] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        face_counts.push(count as usize);
        labels.push(label);
    }
    let incidences = (0..n.saturating_sub(1))
        .map(|i| {
            let set: BTreeSet<(u32, u32)> = (0..m).map(|x| (labels[i][x], labels[i + 1][x])).collect();
            set.into_iter().collect()
        })
        .collect();
    Ok(Polytope {
        face_counts,
        incidences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(d: usize, s: &str) -> Perm {
        Perm::parse(d, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![perm(4, "(0 1)"), perm(4, "(1 2)"), perm(4, "(2 3)")]).unwrap()
    }

    fn tuple(g: &PermGroup, gens: &[&str]) -> GeneratorTuple {
        GeneratorTuple::new(g, gens.iter().map(|s| perm(g.degree(), s)).collect()).unwrap()
    }

    #[test]
    fn string_property() {
        let g = s4();
        assert!(tuple(&g, &["(0 1)", "(1 2)", "(2 3)"]).is_string());
        assert!(!tuple(&g, &["(0 1)", "(2 3)", "(1 2)"]).is_string());
        assert!(tuple(&g, &["(0 1)"]).is_string());
        assert!(!tuple(&g, &["(0 1)", "(0 1)"]).is_string());
        assert!(!tuple(&g, &["(0 1 2)", "(0 1)"]).is_string());
    }

    #[test]
    fn schlafli_types() {
        let g = s4();
        let t = tuple(&g, &["(0 1)", "(1 2)", "(2 3)"]);
        assert_eq!(t.schlafli(), SchlafliType(vec![3, 3]));
        assert_eq!(t.schlafli().to_string(), "{3,3}");
        assert_eq!(t.dual().schlafli(), t.schlafli().reversed());
        assert_eq!(tuple(&g, &["(0 1)", "(0 1)(2 3)"]).schlafli(), SchlafliType(vec![2]));
    }

    #[test]
    fn parabolics() {
        let g = s4();
        let t = tuple(&g, &["(0 1)", "(1 2)", "(2 3)"]);
        assert_eq!(parabolic(&t, &[]).order(), 24);
        assert_eq!(parabolic(&t, &[0, 1, 2]).order(), 1);
        assert_eq!(parabolic(&t, &[0]).order(), 6);
    }

    #[test]
    fn intersection_property() {
        let g = s4();
        let l = Limits::default();
        let simplex = tuple(&g, &["(0 1)", "(1 2)", "(2 3)"]);
        assert!(is_string_c_group(&simplex, l).unwrap());
        assert!(check_c2_bruteforce(&simplex, l).unwrap());
        // G_0 and G_2 both equal the whole group of order 8, while |G_02| = 2.
        let bad = tuple(&g, &["(2 3)", "(0 2)(1 3)", "(0 1)"]);
        assert!(bad.is_string());
        assert!(!is_string_c_group(&bad, l).unwrap());
        assert!(!check_c2_bruteforce(&bad, l).unwrap());
        assert!(!is_string_c_group(&tuple(&g, &["(0 1)", "(0 1)"]), l).unwrap());
        assert!(check_c2_bruteforce(&tuple(&g, &["(0 1)", "(2 3)"]), l).unwrap());
    }

    #[test]
    fn tetrahedron() {
        let g = s4();
        let t = tuple(&g, &["(0 1)", "(1 2)", "(2 3)"]);
        let p = build_polytope(&t, Limits::default()).unwrap();
        assert_eq!(p.face_counts, vec![4, 6, 4]);
        assert_eq!(p.flag_count(), 24);
        assert_eq!(p.incidences[0].len(), 12);
    }

    #[test]
    fn polygons() {
        for k in 3..9usize {
            let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
            let refl: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
            let r = Perm::from_images(&rot).unwrap();
            let s = Perm::from_images(&refl).unwrap();
            let g = PermGroup::new(k, vec![r.clone(), s.clone()]).unwrap();
            let t = GeneratorTuple::new(&g, vec![s.clone(), s.then(&r)]).unwrap();
            assert_eq!(t.schlafli(), SchlafliType(vec![k as u64]));
            let p = build_polytope(&t, Limits::default()).unwrap();
            assert_eq!(p.face_counts, vec![k, k]);
            assert_eq!(p.flag_count(), 2 * k as u128);
        }
    }

    #[test]
    fn checker_memoizes_rank_four() {
        let s5 = PermGroup::new(5, vec![perm(5, "(0 1 2 3 4)"), perm(5, "(0 1)")]).unwrap();
        let t = tuple(&s5, &["(0 1)", "(1 2)", "(2 3)", "(3 4)"]);
        let c = CGroupChecker::new(Limits::default());
        assert!(c.check(t.gens()).unwrap());
        assert_eq!(c.memo_len(), 1);
        assert!(c.check_with_order(t.gens(), Some(120)).unwrap());
    }
}
