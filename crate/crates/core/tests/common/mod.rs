//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use polyatlas::fixture::load_group;
use polyatlas::{GeneratorTuple, Limits, Perm, PermGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.txt"))
}

pub fn fixture(name: &str) -> PermGroup {
    load_group(fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Fixtures of order at most 2000, with representation counts found by an
/// independent exhaustive search: (name, order, rank 3, rank >= 4).
pub const SMALL: &[(&str, u128, usize, usize)] = &[
    ("s4", 24, 2, 0),
    ("s5", 120, 4, 1),
    ("a5", 60, 2, 0),
    ("d8", 8, 0, 0),
    ("c2c2c2", 8, 1, 0),
    ("psl27", 168, 0, 0),
    ("c3", 3, 0, 0),
    ("c5", 5, 0, 0),
    ("s4xc2", 48, 4, 3),
    ("s6", 720, 2, 5),
];

/// All elements, by plain closure.
pub fn elements(g: &PermGroup) -> Vec<Perm> {
    let d = g.degree();
    let mut seen: HashSet<Perm> = HashSet::from([Perm::identity(d)]);
    let mut stack = vec![Perm::identity(d)];
    while let Some(x) = stack.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    let mut v: Vec<Perm> = seen.into_iter().collect();
    v.sort();
    v
}

pub fn involutions(g: &PermGroup) -> Vec<Perm> {
    elements(g).into_iter().filter(Perm::is_involution).collect()
}

/// A random tuple of involutions with the string property: each new
/// generator commutes with all but the previous one. Generators may repeat.
pub fn random_string_tuple(inv: &[Perm], rank: usize, rng: &mut impl Rng) -> Option<Vec<Perm>> {
    let mut gens: Vec<Perm> = vec![inv.choose(rng)?.clone()];
    while gens.len() < rank {
        let k = gens.len();
        let pool: Vec<&Perm> = inv
            .iter()
            .filter(|c| gens[..k - 1].iter().all(|x| x.commutes_with(c)))
            .collect();
        gens.push((*pool.choose(rng)?).clone());
    }
    Some(gens)
}

/// Dihedral subgroups of order at least 6 up to conjugacy, found by scanning
/// all pairs of involutions and comparing element sets.
pub fn dihedral_classes_bruteforce(g: &PermGroup) -> usize {
    let elems = elements(g);
    let inv: Vec<Perm> = elems.iter().filter(|x| x.is_involution()).cloned().collect();
    let mut subgroups: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for a in &inv {
        for b in &inv {
            if a.then(b).order() >= 3 {
                let h = PermGroup::new(g.degree(), vec![a.clone(), b.clone()]).unwrap();
                subgroups.insert(elements(&h));
            }
        }
    }
    let mut classes = 0;
    let mut done: HashSet<Vec<Perm>> = HashSet::new();
    for s in &subgroups {
        if done.contains(s) {
            continue;
        }
        classes += 1;
        for x in &elems {
            let mut c: Vec<Perm> = s.iter().map(|y| y.conjugate_by(x)).collect();
            c.sort();
            done.insert(c);
        }
    }
    classes
}

pub fn tuple(g: &PermGroup, gens: Vec<Perm>) -> GeneratorTuple {
    GeneratorTuple::new(g, gens).unwrap()
}

pub fn limits() -> Limits {
    Limits::default()
}
