//! Exhaustive enumeration of string C-group representations for small groups,
//! used to cross-check the classification algorithms.
//!
//! Nothing here uses stabilizer chains: subgroups are formed by closure, the
//! intersection property is tested subset by subset, and isomorphism is
//! decided by Cayley-graph extension.

use std::collections::HashSet;

use crate::analysis::Limits;
use crate::dedup::are_isomorphic_bfs;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::sggi::{check_c2_bruteforce, closure, GeneratorTuple};

/// Largest group order the oracle accepts.
pub const ORACLE_ORDER_LIMIT: u128 = 2000;

/// Every representation of rank `min_rank..=max_rank` up to isomorphism and
/// duality, each given by its least form over the class and the duals.
pub fn oracle_catalog(
    group: &PermGroup,
    min_rank: usize,
    max_rank: Option<usize>,
    limits: Limits,
) -> Result<Vec<GeneratorTuple>> {
    let d = group.degree();
    let elements = closure(d, group.generators(), ORACLE_ORDER_LIMIT as u64)
        .map_err(|_| Error::too_large("group for the oracle", group.order(), ORACLE_ORDER_LIMIT))?;
    let order = elements.len() as u128;
    // A string C-group of rank n has order at least 2^n.
    let max_rank = max_rank.unwrap_or((u128::BITS - 1 - order.leading_zeros()) as usize);
    let mut involutions: Vec<Perm> = elements.iter().filter(|x| x.is_involution()).cloned().collect();
    involutions.sort();

    // Up to conjugation, ρ0 may be taken least in its conjugacy class.
    let first: Vec<Perm> = involutions
        .iter()
        .filter(|x| elements.iter().all(|g| x.conjugate_by(g) >= **x))
        .cloned()
        .collect();

    let mut valid: Vec<Vec<Perm>> = Vec::new();
    let mut prefix = Vec::new();
    for r0 in &first {
        prefix.push(r0.clone());
        extend(&mut prefix, &involutions, &elements, min_rank, max_rank, limits, &mut valid)?;
        prefix.pop();
    }

    let tuples: Vec<GeneratorTuple> = valid
        .into_iter()
        .map(|g| GeneratorTuple::new(group, g))
        .collect::<Result<_>>()?;
    let mut assigned = vec![false; tuples.len()];
    let mut out = Vec::new();
    for i in 0..tuples.len() {
        if assigned[i] {
            continue;
        }
        let t = &tuples[i];
        let dual = t.dual();
        for j in i..tuples.len() {
            if !assigned[j]
                && tuples[j].rank() == t.rank()
                && (are_isomorphic_bfs(t, &tuples[j], limits.max_enum)?
                    || are_isomorphic_bfs(&dual, &tuples[j], limits.max_enum)?)
            {
                assigned[j] = true;
            }
        }
        let a = least_bfs(t, &involutions, limits)?;
        let b = least_bfs(&dual, &involutions, limits)?;
        out.push(GeneratorTuple::new(group, a.min(b))?);
    }
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.gens().cmp(b.gens())));
    Ok(out)
}

fn extend(
    prefix: &mut Vec<Perm>,
    involutions: &[Perm],
    elements: &HashSet<Perm>,
    min_rank: usize,
    max_rank: usize,
    limits: Limits,
    valid: &mut Vec<Vec<Perm>>,
) -> Result<()> {
    let k = prefix.len();
    if k >= 3 {
        let t = GeneratorTuple::new(&PermGroup::trivial(prefix[0].degree()), prefix.clone())?;
        if !check_c2_bruteforce(&t, limits)? {
            return Ok(());
        }
    }
    if k >= min_rank && closure(prefix[0].degree(), prefix, limits.max_enum)?.len() == elements.len() {
        valid.push(prefix.clone());
    }
    if k == max_rank {
        return Ok(());
    }
    for c in involutions {
        if prefix.contains(c) || !prefix[..k - 1].iter().all(|x| x.commutes_with(c)) {
            continue;
        }
        prefix.push(c.clone());
        extend(prefix, involutions, elements, min_rank, max_rank, limits, valid)?;
        prefix.pop();
    }
    Ok(())
}

fn product_order(a: &Perm, b: &Perm) -> u64 {
    a.then(b).order()
}

/// The least tuple `s` with `t_i -> s_i` extending to an automorphism.
fn least_bfs(t: &GeneratorTuple, involutions: &[Perm], limits: Limits) -> Result<Vec<Perm>> {
    let ambient = t.ambient().clone();
    let mut chosen: Vec<Perm> = Vec::new();
    fn go(
        t: &GeneratorTuple,
        ambient: &PermGroup,
        involutions: &[Perm],
        limits: Limits,
        chosen: &mut Vec<Perm>,
    ) -> Result<bool> {
        let k = chosen.len();
        if k == t.rank() {
            return Ok(true);
        }
        for c in involutions {
            if (0..k).any(|i| product_order(&chosen[i], c) != t.pair_order(i, k)) {
                continue;
            }
            chosen.push(c.clone());
            let a = GeneratorTuple::new(ambient, t.gens()[..=k].to_vec())?;
            let b = GeneratorTuple::new(ambient, chosen.clone())?;
            if are_isomorphic_bfs(&a, &b, limits.max_enum)? && go(t, ambient, involutions, limits, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    if go(t, &ambient, involutions, limits, &mut chosen)? {
        Ok(chosen)
    } else {
        Err(Error::Invalid("tuple is not isomorphic to itself".into()))
    }
}
