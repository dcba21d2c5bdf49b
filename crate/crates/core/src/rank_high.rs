//! String C-group representations of rank at least 4.
//!
//! In such a representation `ρ0` commutes with `ρ2, .., ρ_{n-1}`, so the
//! tuple without `ρ1` lives in the centralizer of `ρ0`, where it is a
//! representation of `<ρ0> x <ρ2, .., ρ_{n-1}>`. The search fixes `ρ0` up to
//! conjugacy, enumerates those tuples inside the centralizer up to
//! conjugacy there, and then inserts `ρ1`, which has to commute with
//! `ρ3, .., ρ_{n-1}`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::analysis::{centralizer, reduce_degree, GroupAnalysis};
use crate::dedup::dedup_catalog;
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::rank3::generates;
use crate::sggi::{CGroupChecker, GeneratorTuple};

#[derive(Clone, Copy, Debug, Default)]
pub struct HighOptions {
    /// Largest rank searched; unbounded when `None`.
    pub max_rank: Option<usize>,
}

/// Tuples `(r0, r2, .., r_{n-1})` with `n >= 4` of involutions of `h` that
/// are string C-group representations of the group they generate, with `r0`
/// outside `<r2, .., r_{n-1}>`. `h` must centralize `r0`; the result holds
/// one tuple per `h`-conjugacy class, and the search is cut at `max_rank`.
pub fn enumerate_inner(
    h: &PermGroup,
    r0: &Perm,
    checker: &CGroupChecker,
    bound: u64,
    max_rank: Option<usize>,
) -> Result<Vec<Vec<Perm>>> {
    let elements: Vec<Perm> = h.elements(bound)?.collect();
    let mut inv: Vec<Perm> = elements
        .iter()
        .filter(|x| x.is_involution() && *x != r0)
        .cloned()
        .collect();
    inv.sort();
    let max_chain = max_rank.map(|n| n.saturating_sub(2)).unwrap_or(usize::MAX);

    let canonical = |chain: &[Perm]| -> Vec<Perm> {
        let mut candidates: Vec<&Perm> = elements.iter().collect();
        let mut best = Vec::with_capacity(chain.len());
        for c in chain {
            let images: Vec<Perm> = candidates.iter().map(|x| c.conjugate_by(x)).collect();
            let min = images.iter().min().expect("group is non-empty").clone();
            candidates = candidates
                .into_iter()
                .zip(&images)
                .filter(|(_, y)| **y == min)
                .map(|(x, _)| x)
                .collect();
            best.push(min);
        }
        best
    };

    let mut out = Vec::new();
    let mut level: BTreeSet<Vec<Perm>> = inv.iter().map(|x| canonical(std::slice::from_ref(x))).collect();
    let mut length = 1;
    while !level.is_empty() && length < max_chain {
        let next: Vec<Vec<Vec<Perm>>> = level
            .par_iter()
            .map(|chain| -> Result<Vec<Vec<Perm>>> {
                let last = chain.len() - 1;
                let mut grown = Vec::new();
                for c in &inv {
                    if chain.contains(c) || !chain[..last].iter().all(|x| x.commutes_with(c)) {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(chain.len() + 2);
                    tuple.push(r0.clone());
                    tuple.extend(chain.iter().cloned());
                    tuple.push(c.clone());
                    if !checker.check(&tuple)? {
                        continue;
                    }
                    let inner = PermGroup::new(h.degree(), tuple[1..].to_vec())?;
                    if inner.contains(r0) {
                        continue;
                    }
                    grown.push(canonical(&tuple[1..]));
                }
                Ok(grown)
            })
            .collect::<Result<_>>()?;
        level = next.into_iter().flatten().collect();
        length += 1;
        for chain in &level {
            let mut tuple = vec![r0.clone()];
            tuple.extend(chain.iter().cloned());
            out.push(tuple);
        }
    }
    Ok(out)
}

/// Completions `(r0, r1, r2, .., r_{n-1})` of `partial = (r0, r2, .., r_{n-1})`
/// that are string C-group representations of the whole group.
pub fn insert_rho1(a: &GroupAnalysis, partial: &[Perm], checker: &CGroupChecker) -> Result<Vec<GeneratorTuple>> {
    let group = a.group();
    let order = group.order();
    let Some(r3) = partial.get(2) else {
        return Ok(Vec::new());
    };
    let candidates = a.commuting_involutions(r3).expect("involution of the group");
    let mut out = Vec::new();
    for r1 in candidates {
        if partial.contains(&r1) || !partial[3..].iter().all(|x| x.commutes_with(&r1)) {
            continue;
        }
        let mut gens = Vec::with_capacity(partial.len() + 1);
        gens.push(partial[0].clone());
        gens.push(r1);
        gens.extend(partial[1..].iter().cloned());
        let t = GeneratorTuple::new(group, gens)?;
        if !t.is_string() || !generates(group, t.gens())? {
            continue;
        }
        if checker.check_with_order(t.gens(), Some(order))? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Candidate tuples of rank at least 4 before classification up to
/// isomorphism.
pub fn high_candidates(a: &GroupAnalysis, opts: HighOptions) -> Result<Vec<GeneratorTuple>> {
    let group = a.group();
    let limits = a.limits();
    let checker = CGroupChecker::new(limits);
    let per_class: Vec<Vec<GeneratorTuple>> = a
        .involution_classes()
        .par_iter()
        .map(|class| -> Result<Vec<GeneratorTuple>> {
            let r0 = &class.representative;
            let h = centralizer(group, r0, limits)?;
            let reduction = reduce_degree(&h)?;
            let inner_checker = CGroupChecker::new(limits);
            let small_r0 = reduction.restrict(r0);
            let partials =
                enumerate_inner(reduction.group(), &small_r0, &inner_checker, limits.max_enum, opts.max_rank)?;
            let mut out = Vec::new();
            for p in partials {
                let lifted: Vec<Perm> = p.iter().map(|x| reduction.lift(x)).collect();
                out.extend(insert_rho1(a, &lifted, &checker)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_class.into_iter().flatten().collect())
}

/// All representations of rank at least 4 up to isomorphism and duality.
pub fn classify_high(a: &GroupAnalysis, opts: HighOptions) -> Result<Vec<GeneratorTuple>> {
    dedup_catalog(&high_candidates(a, opts)?, a.limits())
}
