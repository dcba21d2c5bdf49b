//! Permutation groups given by generators, with a stabilizer chain built on
//! first use.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chain::{BuildOptions, Built, ElementIter, StabChain};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the number of elements any routine will enumerate.
pub const DEFAULT_MAX_ENUM: u64 = 20_000_000;

/// A permutation group. Cloning is cheap; the chain is shared.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

struct Inner {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// The group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators,
                chain: OnceLock::new(),
            }),
        })
    }

    /// Like [`PermGroup::new`], but the chain is built immediately using
    /// `order_bound` as an upper bound on the group order: if the random phase
    /// reaches it the chain is complete without verification. The bound is
    /// trusted; a value below the true order gives an incomplete chain.
    pub fn with_order_bound(degree: usize, generators: Vec<Perm>, order_bound: u128) -> Result<Self> {
        let group = Self::new(degree, generators)?;
        let opts = BuildOptions {
            target_order: Some(order_bound),
            ..Default::default()
        };
        match StabChain::build(degree, &group.inner.generators, &opts)? {
            Built::Complete(chain) => {
                let _ = group.inner.chain.set(chain);
            }
            Built::ExceedsCap => unreachable!("no cap requested"),
        }
        Ok(group)
    }

    /// Like [`PermGroup::new`] for a group whose order is known exactly;
    /// the chain is built and verified, and a different order is an error.
    pub fn with_order(degree: usize, generators: Vec<Perm>, order: u128) -> Result<Self> {
        let group = Self::new(degree, generators)?;
        if group.order() != order {
            return Err(Error::Invalid(format!(
                "generators produce a group of order {}, expected {order}",
                group.order()
            )));
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators to mismatch")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.inner.chain.get_or_init(|| {
            StabChain::new(self.inner.degree, &self.inner.generators)
                .expect("generator degrees are checked on construction")
        })
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.is_identity() {
            return g.degree() == self.degree();
        }
        self.chain().contains(g)
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch(g.degree(), self.degree()));
            }
            if !self.contains(g) {
                return Err(Error::NotMember(g.to_string()));
            }
        }
        PermGroup::new(self.degree(), gens)
    }

    /// Equality as sets: same order and each generator set inside the other.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && other.generators().iter().all(|g| self.contains(g))
            && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// All elements, in the chain's index order.
    pub fn elements(&self, bound: u64) -> Result<ElementIter<'_>> {
        let order = self.order();
        if order > bound as u128 {
            return Err(Error::too_large("group to enumerate", order, bound as u128));
        }
        Ok(self.chain().iter())
    }

    /// `A ∩ B`, found by enumerating the smaller factor and testing
    /// membership in the other.
    pub fn intersection(&self, other: &PermGroup, bound: u64) -> Result<PermGroup> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let members: Vec<Perm> = small
            .elements(bound)
            .map_err(|_| Error::too_large("intersection factor", small.order(), bound as u128))?
            .filter(|x| big.contains(x))
            .collect();
        let size = members.len() as u128;
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(self.degree());
        for m in &members {
            if current.order() == size {
                break;
            }
            if !current.contains(m) {
                gens.push(m.clone());
                current = PermGroup::with_order_bound(self.degree(), gens.clone(), size)?;
            }
        }
        Ok(current)
    }

    /// `|A ∩ B|` if it is at most `limit`, `None` if it exceeds it.
    pub fn intersection_order_up_to(
        &self,
        other: &PermGroup,
        limit: u128,
        bound: u64,
    ) -> Result<Option<u128>> {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut count = 0u128;
        for x in small
            .elements(bound)
            .map_err(|_| Error::too_large("intersection factor", small.order(), bound as u128))?
        {
            if big.contains(&x) {
                count += 1;
                if count > limit {
                    return Ok(None);
                }
            }
        }
        Ok(Some(count))
    }

    /// Orbits on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        point_orbits(self.degree(), self.generators())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() <= 1 || self.orbits().len() == 1
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Orbits of `gens` on `{0, .., degree-1}`.
pub fn point_orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut next = 0;
        while next < orbit.len() {
            let p = orbit[next];
            for g in gens {
                let q = g.image(p);
                if label[q] == usize::MAX {
                    label[q] = id;
                    orbit.push(q);
                }
            }
            next += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(d: usize, s: &str) -> Perm {
        Perm::parse(d, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![perm(4, "(0 1)"), perm(4, "(1 2)"), perm(4, "(2 3)")]).unwrap()
    }

    fn brute_closure(gens: &[Perm], d: usize) -> HashSet<Perm> {
        let mut set: HashSet<Perm> = [Perm::identity(d)].into_iter().collect();
        let mut frontier: Vec<Perm> = set.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn subgroup_orders() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.subgroup(vec![]).unwrap().order(), 1);
        assert_eq!(g.subgroup(g.generators().to_vec()).unwrap().order(), 24);
        let s3 = g.subgroup(vec![perm(4, "(0 1)"), perm(4, "(1 2)")]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.order() as usize, brute_closure(s3.generators(), 4).len());
    }

    #[test]
    fn subgroup_rejects_non_members() {
        let a4 = PermGroup::new(4, vec![perm(4, "(0 1 2)"), perm(4, "(1 2 3)")]).unwrap();
        assert!(matches!(
            a4.subgroup(vec![perm(4, "(0 1)")]),
            Err(Error::NotMember(_))
        ));
    }

    #[test]
    fn elements_enumerate_each_once() {
        let g = s4();
        let elems: Vec<Perm> = g.elements(DEFAULT_MAX_ENUM).unwrap().collect();
        assert_eq!(elems.len(), 24);
        let set: HashSet<_> = elems.into_iter().collect();
        assert_eq!(set, brute_closure(g.generators(), 4));
        let trivial = PermGroup::trivial(3);
        let only: Vec<_> = trivial.elements(10).unwrap().collect();
        assert_eq!(only, vec![Perm::identity(3)]);
        assert!(matches!(g.elements(10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn membership_matches_enumeration() {
        // A group of order 1152 inside S8: wreath product S4 wr C2 of index 35.
        let g = PermGroup::new(
            8,
            vec![
                perm(8, "(0 1)"),
                perm(8, "(0 1 2 3)"),
                perm(8, "(0 4)(1 5)(2 6)(3 7)"),
            ],
        )
        .unwrap();
        let members: HashSet<Perm> = g.elements(DEFAULT_MAX_ENUM).unwrap().collect();
        assert_eq!(members.len() as u128, g.order());
        let s8 = PermGroup::new(8, vec![perm(8, "(0 1 2 3 4 5 6 7)"), perm(8, "(0 1)")]).unwrap();
        for x in s8.elements(DEFAULT_MAX_ENUM).unwrap() {
            assert_eq!(g.contains(&x), members.contains(&x));
        }
    }

    #[test]
    fn intersections() {
        let g = s4();
        let a = g.subgroup(vec![perm(4, "(1 2)"), perm(4, "(2 3)")]).unwrap();
        let b = g.subgroup(vec![perm(4, "(0 1)"), perm(4, "(1 2)")]).unwrap();
        let i = a.intersection(&b, DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(i.order(), 2);
        assert!(i.contains(&perm(4, "(1 2)")));
        assert_eq!(b.intersection(&a, DEFAULT_MAX_ENUM).unwrap().order(), 2);
        assert!(g.intersection(&g, DEFAULT_MAX_ENUM).unwrap().same_group(&g));
        assert_eq!(g.intersection(&PermGroup::trivial(4), 100).unwrap().order(), 1);
        assert_eq!(a.intersection_order_up_to(&b, 10, 100).unwrap(), Some(2));
        assert_eq!(a.intersection_order_up_to(&b, 1, 100).unwrap(), None);
        assert!(matches!(
            g.intersection(&g, 5),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn orbits_and_transitivity() {
        let g = PermGroup::new(5, vec![perm(5, "(0 2)"), perm(5, "(1 3)")]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert!(!g.is_transitive());
        assert!(s4().is_transitive());
    }

    #[test]
    fn known_order_is_checked() {
        let gens = vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")];
        assert_eq!(PermGroup::with_order(4, gens.clone(), 24).unwrap().order(), 24);
        assert!(PermGroup::with_order(4, gens, 12).is_err());
    }
}
