//! Conjugacy classes, centralizers, normalizers of cyclic subgroups, dihedral
//! subgroups up to conjugacy, and faithful actions of smaller degree.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::chain::{BuildOptions, Built, StabChain};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_MAX_ENUM};
use crate::orbit::{stabilizer, SchreierOrbit};
use crate::perm::{gcd, Perm, Point};

/// Size bounds for the enumeration-based algorithms.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest group whose elements may be listed.
    pub max_enum: u64,
    /// Largest orbit (of involutions, subgroups, ..) that may be stored.
    pub max_orbit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: DEFAULT_MAX_ENUM,
            max_orbit: DEFAULT_MAX_ENUM as usize,
        }
    }
}

/// A conjugacy class of elements.
#[derive(Clone, Debug)]
pub struct ElementClass {
    /// The member with the smallest element index.
    pub representative: Perm,
    pub order: u64,
    pub size: u64,
}

/// A conjugacy class of involutions with the involutions commuting with
/// its representative.
#[derive(Clone, Debug)]
pub struct InvolutionClass {
    pub representative: Perm,
    /// All members, sorted.
    pub members: Vec<Perm>,
    /// The involutions other than the representative that commute with it,
    /// sorted.
    pub commuting_involutions: Vec<Perm>,
    tree: SchreierOrbit<Perm>,
}

impl InvolutionClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.tree.contains(x)
    }

    /// Some `t` with `representative^t = x`, for `x` in the class.
    pub fn conjugator_to(&self, x: &Perm, gens: &[Perm]) -> Option<Perm> {
        self.tree.position(x).map(|i| self.tree.witness(i, gens))
    }
}

/// A dihedral subgroup `<g, h>` with `g` of order at least 3.
#[derive(Clone, Debug)]
pub struct DihedralRep {
    pub rotation: Perm,
    pub reflection: Perm,
    pub subgroup: PermGroup,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so roots are class minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Class data for one group, computed once from the full element list.
pub struct GroupAnalysis {
    group: PermGroup,
    limits: Limits,
    classes: Vec<ElementClass>,
    // Class id of every element, by element index.
    class_of: Vec<u32>,
    involution_classes: Vec<InvolutionClass>,
    involutions: Vec<Perm>,
    // Involution -> its involution class.
    lookup: HashMap<Perm, u32>,
}

impl GroupAnalysis {
    pub fn new(group: &PermGroup, limits: Limits) -> Result<Self> {
        let order = group.order();
        if order > limits.max_enum as u128 {
            return Err(Error::too_large(
                "group for conjugacy classes",
                order,
                limits.max_enum as u128,
            ));
        }
        let n = order as usize;
        let chain = group.chain();
        let base: Vec<Point> = chain.base_points();
        let gens: Vec<(Perm, Perm)> = group
            .generators()
            .iter()
            .map(|x| (x.clone(), x.inverse()))
            .collect();

        let mut uf = UnionFind::new(n);
        let mut involution_idx: Vec<u32> = Vec::new();
        let mut images = vec![0 as Point; base.len()];
        for (i, e) in chain.iter().enumerate() {
            if e.is_involution() {
                involution_idx.push(i as u32);
            }
            for (x, xi) in &gens {
                for (slot, &b) in images.iter_mut().zip(&base) {
                    let p = xi.image(b as usize);
                    *slot = x.image(e.image(p)) as Point;
                }
                let j = chain.index_from_base_images(&mut images);
                uf.union(i as u32, j as u32);
            }
        }

        let mut class_of = vec![0u32; n];
        let mut id_of_root: HashMap<u32, u32> = HashMap::new();
        let mut classes: Vec<ElementClass> = Vec::new();
        for i in 0..n as u32 {
            let r = uf.find(i);
            let id = *id_of_root.entry(r).or_insert_with(|| {
                let rep = chain.element(r as u64);
                classes.push(ElementClass {
                    order: rep.order(),
                    representative: rep,
                    size: 0,
                });
                classes.len() as u32 - 1
            });
            classes[id as usize].size += 1;
            class_of[i as usize] = id;
        }
        drop(uf);

        let mut involutions: Vec<Perm> = involution_idx
            .iter()
            .map(|&i| chain.element(i as u64))
            .collect();
        involutions.sort();

        let mut involution_classes = Vec::new();
        let mut lookup: HashMap<Perm, u32> = HashMap::new();
        for x in &involutions {
            if lookup.contains_key(x) {
                continue;
            }
            let tree = SchreierOrbit::compute(
                x.clone(),
                group.generators(),
                |p, g| p.conjugate_by(g),
                limits.max_orbit,
            )?;
            let id = involution_classes.len() as u32;
            let mut members = tree.points().to_vec();
            members.sort();
            for m in &members {
                lookup.insert(m.clone(), id);
            }
            let commuting = involutions
                .iter()
                .filter(|y| *y != x && y.commutes_with(x))
                .cloned()
                .collect();
            involution_classes.push(InvolutionClass {
                representative: x.clone(),
                members,
                commuting_involutions: commuting,
                tree,
            });
        }

        Ok(GroupAnalysis {
            group: group.clone(),
            limits,
            classes,
            class_of,
            involution_classes,
            involutions,
            lookup,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// All conjugacy classes, ordered by representative index.
    pub fn classes(&self) -> &[ElementClass] {
        &self.classes
    }

    pub fn involution_classes(&self) -> &[InvolutionClass] {
        &self.involution_classes
    }

    /// All involutions of the group, sorted.
    pub fn involutions(&self) -> &[Perm] {
        &self.involutions
    }

    /// Conjugacy class id of a member of the group.
    pub fn class_id(&self, x: &Perm) -> usize {
        self.class_of[self.group.chain().index_of_member(x) as usize] as usize
    }

    pub fn involution_class_of(&self, x: &Perm) -> Option<usize> {
        self.lookup.get(x).map(|&c| c as usize)
    }

    /// The involutions other than `x` that commute with the involution `x`,
    /// obtained by conjugating the stored set of its class representative.
    pub fn commuting_involutions(&self, x: &Perm) -> Option<Vec<Perm>> {
        let class = &self.involution_classes[self.involution_class_of(x)?];
        let t = class.conjugator_to(x, self.group.generators())?;
        let mut out: Vec<Perm> = class
            .commuting_involutions
            .iter()
            .map(|y| y.conjugate_by(&t))
            .collect();
        out.sort();
        Some(out)
    }

    /// One dihedral subgroup `<g, h>` (with `o(g) >= 3`) from each conjugacy
    /// class of such subgroups.
    ///
    /// Rotations run over one generator of each class of cyclic subgroups of
    /// order at least 3. For a fixed rotation `g`, two dihedral subgroups are
    /// conjugate in the group exactly when they are conjugate in `N(<g>)`,
    /// because `<g>` is the only cyclic subgroup of its order in either.
    pub fn dihedral_class_reps(&self) -> Result<Vec<DihedralRep>> {
        let mut covered = vec![false; self.classes.len()];
        let mut out = Vec::new();
        for class in &self.classes {
            let m = class.order;
            let g = &class.representative;
            if m < 3 || covered[self.class_id(g)] {
                continue;
            }
            for k in 1..m {
                if gcd(k, m) == 1 {
                    covered[self.class_id(&g.pow(k))] = true;
                }
            }
            let n = normalizer_of_cyclic(&self.group, g, self.limits)?;
            let inv = inverting_involutions(&n, g, self.limits)?;
            if inv.is_empty() {
                continue;
            }
            let index: HashMap<&Perm, u32> =
                inv.iter().enumerate().map(|(i, h)| (h, i as u32)).collect();
            let mut uf = UnionFind::new(inv.len());
            for (i, h) in inv.iter().enumerate() {
                uf.union(i as u32, index[&g.then(h)]);
                for y in n.generators() {
                    uf.union(i as u32, index[&h.conjugate_by(y)]);
                }
            }
            for (i, h) in inv.iter().enumerate() {
                if uf.find(i as u32) == i as u32 {
                    let subgroup = PermGroup::with_order_bound(
                        self.group.degree(),
                        vec![g.clone(), h.clone()],
                        2 * m as u128,
                    )?;
                    out.push(DihedralRep {
                        rotation: g.clone(),
                        reflection: h.clone(),
                        subgroup,
                    });
                }
            }
        }
        Ok(out)
    }

    /// A text table of the conjugacy classes.
    pub fn class_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group order {}", self.group.order());
        let _ = writeln!(s, "{:>5} {:>7} {:>10}  representative", "class", "order", "size");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "{:>5} {:>7} {:>10}  {}", i, c.order, c.size, c.representative);
        }
        let _ = writeln!(s, "involution classes: {}", self.involution_classes.len());
        for (i, c) in self.involution_classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "{:>5} size {:>8}  commuting involutions {:>8}  {}",
                i,
                c.members.len(),
                c.commuting_involutions.len(),
                c.representative
            );
        }
        s
    }
}

/// Conjugacy classes of involutions.
pub fn involution_classes(group: &PermGroup, limits: Limits) -> Result<Vec<InvolutionClass>> {
    Ok(GroupAnalysis::new(group, limits)?.involution_classes)
}

/// One representative of each conjugacy class, with its element order.
pub fn element_class_reps(group: &PermGroup, limits: Limits) -> Result<Vec<(Perm, u64)>> {
    Ok(GroupAnalysis::new(group, limits)?
        .classes
        .into_iter()
        .map(|c| (c.representative, c.order))
        .collect())
}

/// `C_G(x)`, as the stabilizer of `x` in the conjugation action on its class.
pub fn centralizer(group: &PermGroup, x: &Perm, limits: Limits) -> Result<PermGroup> {
    let orbit = SchreierOrbit::compute(
        x.clone(),
        group.generators(),
        |p, g| p.conjugate_by(g),
        limits.max_orbit,
    )?;
    stabilizer(group, &orbit, |p, g| p.conjugate_by(g))
}

/// The least generator of the cyclic group `<g>`.
pub fn cyclic_key(g: &Perm) -> Perm {
    let m = g.order();
    let mut best = g.clone();
    let mut p = g.clone();
    for k in 2..m {
        p = p.then(g);
        if gcd(k, m) == 1 && p < best {
            best = p.clone();
        }
    }
    best
}

/// `N_G(<g>)`, as the stabilizer of `<g>` in the conjugation action on
/// cyclic subgroups, each represented by its least generator.
pub fn normalizer_of_cyclic(group: &PermGroup, g: &Perm, limits: Limits) -> Result<PermGroup> {
    let act = |c: &Perm, x: &Perm| cyclic_key(&c.conjugate_by(x));
    let orbit = SchreierOrbit::compute(cyclic_key(g), group.generators(), act, limits.max_orbit)?;
    stabilizer(group, &orbit, act)
}

/// The involutions `h` of `n` with `g^h = g^-1`, sorted.
pub fn inverting_involutions(n: &PermGroup, g: &Perm, limits: Limits) -> Result<Vec<Perm>> {
    let g_inv = g.inverse();
    let mut out: Vec<Perm> = n
        .elements(limits.max_enum)?
        .filter(|h| h.is_involution() && g.conjugate_by(h) == g_inv)
        .collect();
    out.sort();
    Ok(out)
}

/// A faithful action of a group on one of its orbits, with maps between the
/// two actions.
#[derive(Clone, Debug)]
pub struct DegreeReduction {
    original_degree: usize,
    group: PermGroup,
    // New point -> old point.
    points: Vec<usize>,
    // Old point -> new point, usize::MAX off the orbit.
    relabel: Vec<usize>,
    lift_chain: Option<StabChain>,
}

impl DegreeReduction {
    /// The group in its reduced action.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// The retained points of the original action, in new-label order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Image of an element of the original action.
    pub fn restrict(&self, g: &Perm) -> Perm {
        if self.lift_chain.is_none() {
            return g.clone();
        }
        let images: Vec<usize> = self
            .points
            .iter()
            .map(|&p| self.relabel[g.image(p)])
            .collect();
        Perm::from_images(&images).expect("orbit is invariant")
    }

    /// The element of the original action restricting to `r`.
    pub fn lift(&self, r: &Perm) -> Perm {
        let Some(chain) = &self.lift_chain else {
            return r.clone();
        };
        let mut images: Vec<Point> = chain
            .base_points()
            .iter()
            .map(|&b| self.points[r.image(self.relabel[b as usize])] as Point)
            .collect();
        let idx = chain.index_from_base_images(&mut images);
        chain.element(idx)
    }

    pub fn original_degree(&self) -> usize {
        self.original_degree
    }
}

/// Restricts `h` to its smallest orbit on which it acts faithfully, or keeps
/// it as is when no proper orbit is faithful.
pub fn reduce_degree(h: &PermGroup) -> Result<DegreeReduction> {
    let degree = h.degree();
    let order = h.order();
    let mut orbits = h.orbits();
    orbits.sort_by_key(|o| (o.len(), o[0]));
    for orbit in orbits.iter().filter(|o| o.len() < degree) {
        let mut relabel = vec![usize::MAX; degree];
        for (new, &old) in orbit.iter().enumerate() {
            relabel[old] = new;
        }
        let restricted: Vec<Perm> = h
            .generators()
            .iter()
            .map(|g| {
                let images: Vec<usize> = orbit.iter().map(|&p| relabel[g.image(p)]).collect();
                Perm::from_images(&images)
            })
            .collect::<Result<_>>()?;
        let small = PermGroup::with_order_bound(orbit.len(), restricted, order)?;
        if small.order() != order {
            continue;
        }
        let base: Vec<Point> = orbit.iter().map(|&p| p as Point).collect();
        let opts = BuildOptions {
            target_order: Some(order),
            ..Default::default()
        };
        let lift_chain = match StabChain::build_with_base(degree, h.generators(), &opts, Some(&base))? {
            Built::Complete(c) => c,
            Built::ExceedsCap => unreachable!("no cap requested"),
        };
        return Ok(DegreeReduction {
            original_degree: degree,
            group: small,
            points: orbit.clone(),
            relabel,
            lift_chain: Some(lift_chain),
        });
    }
    Ok(DegreeReduction {
        original_degree: degree,
        group: h.clone(),
        points: (0..degree).collect(),
        relabel: (0..degree).collect(),
        lift_chain: None,
    })
}
