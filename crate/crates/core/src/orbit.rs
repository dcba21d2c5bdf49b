//! Orbits of a group acting on arbitrary objects, with Schreier trees and
//! point stabilizers.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

const ROOT: u32 = u32::MAX;

/// An orbit together with a Schreier tree rooted at its first point.
///
/// The action is on the right: `act(x, g)` is the image of `x` under `g`.
#[derive(Clone, Debug)]
pub struct SchreierOrbit<T> {
    points: Vec<T>,
    index: HashMap<T, u32>,
    // (parent index, generator index) for every non-root point.
    parent: Vec<(u32, u32)>,
}

impl<T: Clone + Eq + Hash> SchreierOrbit<T> {
    /// Breadth-first orbit of `seed`; fails once it exceeds `bound` points.
    pub fn compute<F>(seed: T, gens: &[Perm], act: F, bound: usize) -> Result<Self>
    where
        F: Fn(&T, &Perm) -> T,
    {
        let mut orbit = SchreierOrbit {
            points: vec![seed.clone()],
            index: HashMap::from([(seed, 0)]),
            parent: vec![(ROOT, 0)],
        };
        let mut next = 0;
        while next < orbit.points.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = act(&orbit.points[next], g);
                if !orbit.index.contains_key(&y) {
                    if orbit.points.len() >= bound {
                        return Err(Error::too_large(
                            "orbit",
                            orbit.points.len() as u128 + 1,
                            bound as u128,
                        ));
                    }
                    orbit.index.insert(y.clone(), orbit.points.len() as u32);
                    orbit.points.push(y);
                    orbit.parent.push((next as u32, s as u32));
                }
            }
            next += 1;
        }
        Ok(orbit)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn seed(&self) -> &T {
        &self.points[0]
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    /// An element mapping the seed to the point at `idx`, as a product of
    /// the generators the orbit was computed with.
    pub fn witness(&self, idx: usize, gens: &[Perm]) -> Perm {
        let degree = gens.first().map(Perm::degree).unwrap_or(0);
        let mut path = Vec::new();
        let mut i = idx as u32;
        while self.parent[i as usize].0 != ROOT {
            let (p, s) = self.parent[i as usize];
            path.push(s as usize);
            i = p;
        }
        let mut w = Perm::identity(degree);
        for &s in path.iter().rev() {
            w = w.then(&gens[s]);
        }
        w
    }
}

/// The stabilizer in `group` of the seed of `orbit`, where the orbit was
/// computed with `group.generators()` and the action `act`.
///
/// Schreier generators are sampled at random; the stabilizer order is known
/// in advance, so the search ends exactly when the sampled generators reach
/// it. If random sampling stalls, all Schreier generators are visited in turn.
pub fn stabilizer<T, F>(group: &PermGroup, orbit: &SchreierOrbit<T>, act: F) -> Result<PermGroup>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Perm) -> T,
{
    let gens = group.generators();
    let order = group.order();
    let len = orbit.len() as u128;
    if !order.is_multiple_of(len) {
        return Err(Error::Invalid(format!(
            "orbit length {len} does not divide the group order {order}"
        )));
    }
    let target = order / len;
    let degree = group.degree();
    if gens.is_empty() || target == order {
        return Ok(if target == order {
            group.clone()
        } else {
            PermGroup::trivial(degree)
        });
    }

    let mut witnesses: HashMap<usize, Perm> = HashMap::new();
    let mut schreier = |p: usize, s: usize| -> Perm {
        let g = &gens[s];
        let q = orbit
            .position(&act(&orbit.points[p], g))
            .expect("orbit closed under the generators");
        let wp = witnesses.entry(p).or_insert_with(|| orbit.witness(p, gens)).clone();
        let wq = witnesses.entry(q).or_insert_with(|| orbit.witness(q, gens)).clone();
        wp.then(g).then(&wq.inverse())
    };

    let mut found: Vec<Perm> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    let mut rng = ChaCha8Rng::seed_from_u64(0x57ab);
    let mut misses = 0usize;
    let consider = |x: Perm, found: &mut Vec<Perm>, current: &mut PermGroup| -> Result<bool> {
        if x.is_identity() || current.contains(&x) {
            return Ok(false);
        }
        found.push(x);
        *current = PermGroup::with_order_bound(degree, found.clone(), target)?;
        Ok(true)
    };
    while current.order() < target && misses < 64 {
        let p = rng.gen_range(0..orbit.len());
        let s = rng.gen_range(0..gens.len());
        let x = schreier(p, s);
        // Products of two Schreier generators make stalls much rarer.
        let x = if rng.gen_bool(0.5) && !found.is_empty() {
            x.then(&found[rng.gen_range(0..found.len())])
        } else {
            x
        };
        if consider(x, &mut found, &mut current)? {
            misses = 0;
        } else {
            misses += 1;
        }
    }
    if current.order() < target {
        'all: for p in 0..orbit.len() {
            for s in 0..gens.len() {
                consider(schreier(p, s), &mut found, &mut current)?;
                if current.order() == target {
                    break 'all;
                }
            }
        }
    }
    if current.order() != target {
        return Err(Error::Invalid(format!(
            "stabilizer order {} differs from the expected {target}",
            current.order()
        )));
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(d: usize, s: &str) -> Perm {
        Perm::parse(d, s).unwrap()
    }

    #[test]
    fn point_orbit_and_witnesses() {
        let g = PermGroup::new(6, vec![perm(6, "(0 1 2)"), perm(6, "(2 3)")]).unwrap();
        let orbit = SchreierOrbit::compute(0usize, g.generators(), |&x, p| p.image(x), 100).unwrap();
        assert_eq!(orbit.len(), 4);
        for (i, &pt) in orbit.points().iter().enumerate() {
            assert_eq!(orbit.witness(i, g.generators()).image(0), pt);
        }
        let stab = stabilizer(&g, &orbit, |&x, p| p.image(x)).unwrap();
        assert_eq!(stab.order(), 6);
        assert!(stab.generators().iter().all(|s| s.image(0) == 0));
    }

    #[test]
    fn centralizer_by_conjugation_orbit() {
        let s5 = PermGroup::new(5, vec![perm(5, "(0 1 2 3 4)"), perm(5, "(0 1)")]).unwrap();
        let t = perm(5, "(0 1)");
        let orbit =
            SchreierOrbit::compute(t.clone(), s5.generators(), |x, g| x.conjugate_by(g), 1000)
                .unwrap();
        assert_eq!(orbit.len(), 10);
        let c = stabilizer(&s5, &orbit, |x, g| x.conjugate_by(g)).unwrap();
        assert_eq!(c.order(), 12);
        assert!(c.generators().iter().all(|g| g.commutes_with(&t)));
    }

    #[test]
    fn orbit_bound_is_enforced() {
        let g = PermGroup::new(8, vec![perm(8, "(0 1 2 3 4 5 6 7)")]).unwrap();
        assert!(SchreierOrbit::compute(0usize, g.generators(), |&x, p| p.image(x), 4).is_err());
    }
}
