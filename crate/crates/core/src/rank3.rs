//! Rank-3 string C-group representations.
//!
//! Every rank-3 representation with `o(ρ0 ρ1) >= 3` is conjugate to one whose
//! first two generators generate a chosen representative `D` of a class of
//! dihedral subgroups. The third generator commutes with `ρ0`, so it is drawn
//! from the involutions centralizing `ρ0`. Tuples of type `{2,2}` have no such
//! dihedral subgroup and are searched separately.

use rayon::prelude::*;

use crate::analysis::GroupAnalysis;
use crate::dedup::dedup_catalog;
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::sggi::{CGroupChecker, GeneratorTuple};

#[derive(Clone, Copy, Debug, Default)]
pub struct Rank3Options {
    /// Skip the intersection-property test. Only valid when the group has no
    /// nontrivial cyclic normal subgroup, which is not checked.
    pub skip_c2: bool,
}

/// Whether `gens` generate the whole of `group`.
pub fn generates(group: &PermGroup, gens: &[Perm]) -> Result<bool> {
    let target = group.order();
    if group.is_transitive() && group.degree() > 1 {
        let orbits = crate::group::point_orbits(group.degree(), gens);
        if orbits.len() != 1 {
            return Ok(false);
        }
    }
    let sub = PermGroup::with_order_bound(group.degree(), gens.to_vec(), target)?;
    Ok(sub.order() == target)
}

/// Candidate tuples before classification up to isomorphism: every tuple
/// found by the search that passes all tests.
pub fn rank3_candidates(a: &GroupAnalysis, opts: Rank3Options) -> Result<Vec<GeneratorTuple>> {
    let group = a.group();
    let order = group.order();
    let checker = CGroupChecker::new(a.limits());
    let accept = |gens: Vec<Perm>| -> Result<Option<GeneratorTuple>> {
        let t = GeneratorTuple::new(group, gens)?;
        if !t.is_string() || !generates(group, t.gens())? {
            return Ok(None);
        }
        if !opts.skip_c2 && !checker.check_with_order(t.gens(), Some(order))? {
            return Ok(None);
        }
        Ok(Some(t))
    };

    let dihedral = a.dihedral_class_reps()?;
    let mut found: Vec<GeneratorTuple> = dihedral
        .par_iter()
        .map(|d| -> Result<Vec<GeneratorTuple>> {
            let m = d.rotation.order();
            let inv: Vec<Perm> = d
                .subgroup
                .elements(a.limits().max_enum)?
                .filter(Perm::is_involution)
                .collect();
            let mut out = Vec::new();
            for r0 in &inv {
                let c = a.commuting_involutions(r0).expect("involution of the group");
                for r1 in &inv {
                    if r0 == r1 || r0.then(r1).order() != m {
                        continue;
                    }
                    for r2 in &c {
                        if r2 == r1 {
                            continue;
                        }
                        if let Some(t) = accept(vec![r0.clone(), r1.clone(), r2.clone()])? {
                            out.push(t);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    // Type {2,2}: three pairwise commuting involutions, ρ0 up to conjugacy.
    for class in a.involution_classes() {
        let r0 = &class.representative;
        let c = &class.commuting_involutions;
        for r1 in c {
            for r2 in c {
                if r2 <= r1 || !r1.commutes_with(r2) {
                    continue;
                }
                for gens in [
                    vec![r0.clone(), r1.clone(), r2.clone()],
                    vec![r0.clone(), r2.clone(), r1.clone()],
                ] {
                    if let Some(t) = accept(gens)? {
                        found.push(t);
                    }
                }
            }
        }
    }
    Ok(found)
}

/// All rank-3 string C-group representations up to isomorphism and duality.
pub fn classify_rank3(a: &GroupAnalysis, opts: Rank3Options) -> Result<Vec<GeneratorTuple>> {
    let found = rank3_candidates(a, opts)?;
    dedup_catalog(&found, a.limits())
}
