//! Equivalence of generating tuples under automorphisms and duality.
//!
//! Two tuples `(ρi)` and `(ρ'i)` of the same group are isomorphic when
//! `ρi -> ρ'i` extends to an automorphism. That happens exactly when the
//! diagonal group generated by the pairs `(ρi, ρ'i)`, acting on two disjoint
//! copies of the points, has the same order as the group itself.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::analysis::Limits;
use crate::chain::{BuildOptions, Built, StabChain};
use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};
use crate::sggi::{parabolic, GeneratorTuple, SchlafliType};

/// Groups up to this order get class-minimal representatives.
pub const CANONICAL_ORDER_LIMIT: u128 = 2000;

pub fn dual(t: &GeneratorTuple) -> GeneratorTuple {
    t.dual()
}

fn direct_sum(a: &Perm, b: &Perm) -> Perm {
    let d = a.degree();
    let images: Vec<usize> = (0..d)
        .map(|k| a.image(k))
        .chain((0..d).map(|k| b.image(k) + d))
        .collect();
    Perm::from_images(&images).expect("direct sum of permutations")
}

/// Order of the diagonal group of `a` and `b`, or `None` if it exceeds `cap`.
fn diagonal_order(a: &[Perm], b: &[Perm], cap: u128) -> Result<Option<u128>> {
    let degree = 2 * a.first().map(Perm::degree).unwrap_or(0);
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let gens: Vec<Perm> = a.iter().zip(b).map(|(x, y)| direct_sum(x, y)).collect();
    let opts = BuildOptions {
        order_cap: Some(cap),
        ..Default::default()
    };
    Ok(match StabChain::build(degree, &gens, &opts)? {
        Built::Complete(c) => Some(c.order()),
        Built::ExceedsCap => None,
    })
}

fn same_pair_orders(a: &GeneratorTuple, b: &GeneratorTuple) -> bool {
    let n = a.rank();
    (0..n).all(|i| (i + 1..n).all(|j| a.pair_order(i, j) == b.pair_order(i, j)))
}

/// A permutation `x` of the points with `a_i^x = b_i` for all `i`, found when
/// `<a>` is transitive. Such an `x` induces an isomorphism, so this is a
/// cheap sufficient test; `None` proves nothing.
pub fn conjugating_permutation(a: &[Perm], b: &[Perm]) -> Option<Perm> {
    let d = a.first()?.degree();
    let mut order = Vec::with_capacity(d);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; d];
    let mut seen = vec![false; d];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let p = order[head];
        head += 1;
        for (i, g) in a.iter().enumerate() {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                parent[q] = Some((p, i));
                order.push(q);
            }
        }
    }
    if order.len() != d {
        return None;
    }
    let mut x = vec![usize::MAX; d];
    let mut used = vec![false; d];
    'target: for y in 0..d {
        x.iter_mut().for_each(|v| *v = usize::MAX);
        used.iter_mut().for_each(|v| *v = false);
        x[0] = y;
        used[y] = true;
        for &q in &order[1..] {
            let (p, i) = parent[q].expect("tree edge");
            let z = b[i].image(x[p]);
            if used[z] {
                continue 'target;
            }
            x[q] = z;
            used[z] = true;
        }
        let ok = a
            .iter()
            .zip(b)
            .all(|(g, h)| (0..d).all(|p| x[g.image(p)] == h.image(x[p])));
        if ok {
            return Perm::from_images(&x).ok();
        }
    }
    None
}

/// Isomorphism test for tuples that generate groups of the given order.
pub(crate) fn isomorphic_of_order(a: &GeneratorTuple, b: &GeneratorTuple, order: u128) -> Result<bool> {
    if a.rank() != b.rank() || a.degree() != b.degree() || !same_pair_orders(a, b) {
        return Ok(false);
    }
    if a.gens() == b.gens() || conjugating_permutation(a.gens(), b.gens()).is_some() {
        return Ok(true);
    }
    Ok(diagonal_order(a.gens(), b.gens(), order)? == Some(order))
}

/// Whether `a_i -> b_i` extends to an isomorphism `<a> -> <b>`; for tuples
/// generating the same group this is an automorphism.
pub fn are_isomorphic(a: &GeneratorTuple, b: &GeneratorTuple) -> Result<bool> {
    if a.rank() != b.rank() || a.degree() != b.degree() || !same_pair_orders(a, b) {
        return Ok(false);
    }
    let order = a.generated().order();
    if b.generated().order() != order {
        return Ok(false);
    }
    isomorphic_of_order(a, b, order)
}

/// The same relation decided by extending `a_i -> b_i` along the Cayley
/// graph: breadth-first over all elements, failing on any conflict.
pub fn are_isomorphic_bfs(a: &GeneratorTuple, b: &GeneratorTuple, bound: u64) -> Result<bool> {
    if a.rank() != b.rank() || a.degree() != b.degree() {
        return Ok(false);
    }
    let d = a.degree();
    let mut image: HashMap<Perm, Perm> = HashMap::from([(Perm::identity(d), Perm::identity(d))]);
    let mut queue = vec![Perm::identity(d)];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        let fx = image[&x].clone();
        head += 1;
        for (ai, bi) in a.gens().iter().zip(b.gens()) {
            let y = x.then(ai);
            let fy = fx.then(bi);
            match image.get(&y) {
                Some(prev) if *prev != fy => return Ok(false),
                Some(_) => {}
                None => {
                    if image.len() as u64 >= bound {
                        return Err(Error::too_large("Cayley extension table", image.len() as u128 + 1, bound as u128));
                    }
                    image.insert(y.clone(), fy);
                    queue.push(y);
                }
            }
        }
    }
    let distinct: std::collections::HashSet<&Perm> = image.values().collect();
    if distinct.len() != image.len() {
        return Ok(false);
    }
    // Surjectivity onto <b>: the image is a subgroup containing every b_i.
    let target = b.generated();
    Ok(target.order() == image.len() as u128)
}

/// Whether a tuple is isomorphic to its dual.
pub fn is_self_dual(t: &GeneratorTuple) -> Result<bool> {
    are_isomorphic(t, &t.dual())
}

/// Invariants shared by isomorphic tuples and by a tuple and its dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub rank: usize,
    /// The lesser of the Schläfli type and its reverse.
    pub schlafli: SchlafliType,
    /// Orders of the maximal parabolic subgroups `G_i`, sorted.
    pub parabolic_orders: Vec<u128>,
    pub group_order: u128,
    /// Orientation-normalized orders of parabolics and of short words.
    signature: Vec<u128>,
}

fn word_orders(gens: &[Perm]) -> Vec<u128> {
    let n = gens.len();
    let product = |idx: &[usize]| -> u128 {
        let mut p = gens[idx[0]].clone();
        for &i in &idx[1..] {
            p = p.then(&gens[i]);
        }
        p.order() as u128
    };
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(2) {
        out.push(product(&[i, i + 1, i + 2]));
        out.push(product(&[i, i + 1, i + 2, i + 1]));
        out.push(product(&[i, i + 1, i, i + 2]));
    }
    if n >= 2 {
        let all: Vec<usize> = (0..n).collect();
        out.push(product(&all));
    }
    out
}

fn raw_signature(schlafli: &SchlafliType, parabolics: &[u128], gens: &[Perm]) -> Vec<u128> {
    let mut sig: Vec<u128> = schlafli.0.iter().map(|&p| p as u128).collect();
    sig.extend_from_slice(parabolics);
    sig.extend(word_orders(gens));
    sig
}

pub fn fingerprint(t: &GeneratorTuple) -> Fingerprint {
    fingerprint_of_order(t, t.generated().order())
}

fn fingerprint_of_order(t: &GeneratorTuple, group_order: u128) -> Fingerprint {
    let s = t.schlafli();
    let r = s.reversed();
    let forward: Vec<u128> = (0..t.rank()).map(|i| parabolic(t, &[i]).order()).collect();
    let backward: Vec<u128> = forward.iter().rev().copied().collect();
    let dual = t.dual();
    let signature = raw_signature(&s, &forward, t.gens()).min(raw_signature(&r, &backward, dual.gens()));
    let mut parabolic_orders = forward;
    parabolic_orders.sort_unstable();
    Fingerprint {
        rank: t.rank(),
        schlafli: s.min(r),
        parabolic_orders,
        group_order,
        signature,
    }
}

/// The lesser of a tuple and its dual.
pub fn oriented(t: &GeneratorTuple) -> GeneratorTuple {
    let d = t.dual();
    if d.gens() < t.gens() {
        d
    } else {
        t.clone()
    }
}

/// One representative per class under isomorphism and duality.
///
/// All tuples must generate their common ambient group. Representatives are
/// deterministic: class-minimal (over the tuple and its dual, comparing image
/// arrays) for groups of order at most [`CANONICAL_ORDER_LIMIT`], otherwise
/// the least oriented input of the class. The output is sorted by rank, then
/// by generators.
pub fn dedup_catalog(reps: &[GeneratorTuple], limits: Limits) -> Result<Vec<GeneratorTuple>> {
    let Some(first) = reps.first() else {
        return Ok(Vec::new());
    };
    let ambient = first.ambient().clone();
    let order = ambient.order();
    let mut distinct: Vec<GeneratorTuple> = reps.iter().map(oriented).collect();
    distinct.sort();
    distinct.dedup();
    let prints: Vec<Fingerprint> = distinct.par_iter().map(|t| fingerprint_of_order(t, order)).collect();
    let mut buckets: BTreeMap<Fingerprint, Vec<GeneratorTuple>> = BTreeMap::new();
    for (t, f) in distinct.into_iter().zip(prints) {
        buckets.entry(f).or_default().push(t);
    }
    let buckets: Vec<Vec<GeneratorTuple>> = buckets.into_values().collect();
    let per_bucket: Vec<Vec<GeneratorTuple>> = buckets
        .par_iter()
        .map(|bucket| -> Result<Vec<GeneratorTuple>> {
            let mut kept: Vec<GeneratorTuple> = Vec::new();
            for t in bucket {
                let dual = t.dual();
                let mut seen = false;
                for r in &kept {
                    if isomorphic_of_order(t, r, order)? || isomorphic_of_order(&dual, r, order)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    kept.push(t.clone());
                }
            }
            Ok(kept)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<GeneratorTuple> = per_bucket.into_iter().flatten().collect();
    if order <= CANONICAL_ORDER_LIMIT {
        let involutions: Vec<Perm> = {
            let mut v: Vec<Perm> = ambient
                .elements(limits.max_enum)?
                .filter(Perm::is_involution)
                .collect();
            v.sort();
            v
        };
        out = out
            .par_iter()
            .map(|t| class_minimum(t, &involutions, order))
            .collect::<Result<_>>()?;
    }
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.gens().cmp(b.gens())));
    Ok(out)
}

/// The least tuple, over `t` and its dual, isomorphic to either. Candidates
/// are the sorted `involutions` of the ambient group, which has order `order`.
pub fn class_minimum(t: &GeneratorTuple, involutions: &[Perm], order: u128) -> Result<GeneratorTuple> {
    let a = least_isomorphic(t, involutions, order)?;
    let b = least_isomorphic(&t.dual(), involutions, order)?;
    let best = a.min(b);
    GeneratorTuple::new(t.ambient(), best)
}

fn least_isomorphic(t: &GeneratorTuple, involutions: &[Perm], order: u128) -> Result<Vec<Perm>> {
    let n = t.rank();
    let prefix_orders: Vec<u128> = (1..=n)
        .map(|k| crate::group::PermGroup::new(t.degree(), t.gens()[..k].to_vec()).map(|g| g.order()))
        .collect::<Result<_>>()?;
    let mut chosen: Vec<Perm> = Vec::with_capacity(n);
    if search(t, involutions, &prefix_orders, &mut chosen)? {
        debug_assert_eq!(prefix_orders[n - 1], order);
        Ok(chosen)
    } else {
        Err(Error::Invalid("no tuple isomorphic to itself was found".into()))
    }
}

fn search(t: &GeneratorTuple, involutions: &[Perm], prefix_orders: &[u128], chosen: &mut Vec<Perm>) -> Result<bool> {
    let k = chosen.len();
    if k == t.rank() {
        return Ok(true);
    }
    for c in involutions {
        if (0..k).any(|i| chosen[i].then(c).order() != t.pair_order(i, k)) {
            continue;
        }
        chosen.push(c.clone());
        let cap = prefix_orders[k];
        let ok = diagonal_order(&t.gens()[..=k], chosen, cap)? == Some(cap)
            && crate::group::PermGroup::new(t.degree(), chosen.clone())?.order() == cap;
        if ok && search(t, involutions, prefix_orders, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
