//! Stabilizer chains (bases and strong generating sets).
//!
//! Construction is a seeded random Schreier-Sims phase followed, unless the
//! chain already reaches a supplied upper bound on the group order, by a full
//! deterministic verification of all Schreier generators. The seed is fixed, so a given generator list always
//! produces the same chain.
//!
//! Base points are chosen as the smallest point moved by the element that
//! forces a new level. Elements are numbered by their transversal digits
//! `(i_0, .., i_{k-1})` in lexicographic order, `i_0` most significant; the
//! element with digits `i` is `u_{k-1}[i_{k-1}] · .. · u_0[i_0]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{Perm, Point};

const NONE: u32 = u32::MAX;
const SEED: u64 = 0x5eed_c0ff_ee00_0001;
/// Consecutive trivial sifts that end the random phase.
const QUIET_SIFTS: usize = 24;

#[derive(Clone, Debug)]
struct Level {
    base: Point,
    gens: Vec<Perm>,
    orbit: Vec<Point>,
    pos: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
}

impl Level {
    fn new(degree: usize, base: Point) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![Perm::identity(degree)],
            inv_reps: vec![Perm::identity(degree)],
        }
    }

    fn push_point(&mut self, point: usize, rep: Perm) {
        self.pos[point] = self.orbit.len() as u32;
        self.orbit.push(point as Point);
        self.inv_reps.push(rep.inverse());
        self.reps.push(rep);
    }

    /// Adds a generator and closes the orbit under the enlarged generating set.
    fn add_generator(&mut self, g: Perm) {
        let old_len = self.orbit.len();
        for idx in 0..old_len {
            let q = g.image(self.orbit[idx] as usize);
            if self.pos[q] == NONE {
                let rep = self.reps[idx].then(&g);
                self.push_point(q, rep);
            }
        }
        self.gens.push(g);
        let mut next = old_len;
        while next < self.orbit.len() {
            let p = self.orbit[next] as usize;
            for s in 0..self.gens.len() {
                let q = self.gens[s].image(p);
                if self.pos[q] == NONE {
                    let rep = self.reps[next].then(&self.gens[s]);
                    self.push_point(q, rep);
                }
            }
            next += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

/// Options for [`StabChain::build`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// An upper bound on the group order (for instance the order of a known
    /// overgroup). A chain whose order reaches it is complete, so construction
    /// stops there and skips verification.
    pub target_order: Option<u128>,
    /// Stop as soon as the order provably exceeds this value.
    pub order_cap: Option<u128>,
}

/// Outcome of a build that may stop early.
#[derive(Debug)]
pub enum Built {
    Complete(StabChain),
    /// The order is known to exceed the requested cap.
    ExceedsCap,
}

struct Builder<'a> {
    degree: usize,
    levels: Vec<Level>,
    base_points: Option<&'a [Point]>,
}

impl<'a> Builder<'a> {
    fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Sifts `g` from level `from`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let delta = g.image(level.base as usize);
            let idx = level.pos[delta];
            if idx == NONE {
                return (g, i);
            }
            if idx != 0 {
                g = g.then(&level.inv_reps[idx as usize]);
            }
        }
        (g, self.levels.len())
    }

    fn next_base_point(&self, h: &Perm) -> Result<Point> {
        match self.base_points {
            None => Ok(h.smallest_moved_point().expect("non-identity residue") as Point),
            Some(points) => points
                .iter()
                .copied()
                .find(|&b| h.image(b as usize) != b as usize)
                .ok_or_else(|| {
                    Error::Invalid("element acts trivially on the allowed base points".into())
                }),
        }
    }

    /// Adds a non-trivial residue that fixes the first `depth` base points.
    fn add_strong(&mut self, h: Perm, depth: usize) -> Result<()> {
        if depth == self.levels.len() {
            let b = self.next_base_point(&h)?;
            self.levels.push(Level::new(self.degree, b));
        }
        for level in &mut self.levels[..=depth] {
            level.add_generator(h.clone());
        }
        Ok(())
    }

    fn random_phase(&mut self, gens: &[Perm], opts: &BuildOptions) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut pool: Vec<Perm> = Vec::new();
        while pool.len() < 10 {
            pool.extend(gens.iter().cloned());
        }
        pool.truncate(10.max(gens.len()));
        let mut acc = Perm::identity(self.degree);
        let step = |pool: &mut Vec<Perm>, acc: &mut Perm, rng: &mut ChaCha8Rng| {
            let n = pool.len();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            pool[i] = if rng.gen_bool(0.5) {
                pool[i].then(&pool[j])
            } else {
                pool[j].then(&pool[i])
            };
            *acc = acc.then(&pool[i]);
            acc.clone()
        };
        for _ in 0..40 {
            step(&mut pool, &mut acc, &mut rng);
        }
        let mut quiet = 0;
        while quiet < QUIET_SIFTS {
            if let Some(target) = opts.target_order {
                if self.order() == Some(target) {
                    return Ok(true);
                }
            }
            if self.cap_exceeded(opts) {
                return Ok(true);
            }
            let r = step(&mut pool, &mut acc, &mut rng);
            let (h, depth) = self.sift(r, 0);
            if h.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                self.add_strong(h, depth)?;
            }
        }
        Ok(false)
    }

    fn cap_exceeded(&self, opts: &BuildOptions) -> bool {
        match (opts.order_cap, self.order()) {
            (Some(cap), Some(o)) => o > cap,
            (Some(_), None) => true,
            _ => false,
        }
    }

    /// Deterministic Schreier-Sims completion: every Schreier generator of
    /// every level must sift to the identity through the levels below it.
    fn verify(&mut self, opts: &BuildOptions) -> Result<()> {
        let mut i = self.levels.len();
        while i > 0 {
            let level_idx = i - 1;
            let mut added = None;
            'scan: for p_idx in 0..self.levels[level_idx].orbit.len() {
                for s_idx in 0..self.levels[level_idx].gens.len() {
                    let level = &self.levels[level_idx];
                    let s = &level.gens[s_idx];
                    let q = s.image(level.orbit[p_idx] as usize);
                    let q_idx = level.pos[q] as usize;
                    let schreier = level.reps[p_idx].then(s).then(&level.inv_reps[q_idx]);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, depth) = self.sift(schreier, level_idx + 1);
                    if !h.is_identity() {
                        self.add_strong(h, depth)?;
                        added = Some(depth);
                        break 'scan;
                    }
                }
            }
            match added {
                Some(depth) => {
                    if self.cap_exceeded(opts) {
                        return Ok(());
                    }
                    i = depth + 1;
                }
                None => i -= 1,
            }
        }
        Ok(())
    }
}

impl StabChain {
    /// Builds a chain for the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: &[Perm]) -> Result<StabChain> {
        match Self::build(degree, gens, &BuildOptions::default())? {
            Built::Complete(c) => Ok(c),
            Built::ExceedsCap => unreachable!("no cap requested"),
        }
    }

    pub fn build(degree: usize, gens: &[Perm], opts: &BuildOptions) -> Result<Built> {
        Self::build_with_base(degree, gens, opts, None)
    }

    /// Like [`StabChain::build`] with base points restricted to `base_points`
    /// (in preference order). Every element must be determined by its action
    /// on them.
    pub fn build_with_base(
        degree: usize,
        gens: &[Perm],
        opts: &BuildOptions,
        base_points: Option<&[Point]>,
    ) -> Result<Built> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut b = Builder {
            degree,
            levels: Vec::new(),
            base_points,
        };
        if gens.is_empty() {
            return Ok(Built::Complete(StabChain {
                degree,
                levels: Vec::new(),
            }));
        }
        // Seed the chain with the generators themselves so that every
        // generator is a strong generator of the first level.
        for g in &gens {
            let (h, depth) = b.sift(g.clone(), 0);
            if !h.is_identity() {
                b.add_strong(h, depth)?;
            }
        }
        let stopped_early = b.random_phase(&gens, opts)?;
        if b.cap_exceeded(opts) {
            return Ok(Built::ExceedsCap);
        }
        let reached = opts.target_order.is_some() && b.order() == opts.target_order;
        if !(stopped_early && reached) {
            b.verify(opts)?;
            if b.cap_exceeded(opts) {
                return Ok(Built::ExceedsCap);
            }
        }
        Ok(Built::Complete(StabChain {
            degree,
            levels: b.levels,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Group order as the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.try_order().expect("group order overflows u128")
    }

    pub fn try_order(&self) -> Result<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map(|l| &l.gens[..]).unwrap_or(&[])
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut g = g.clone();
        for level in &self.levels {
            let idx = level.pos[g.image(level.base as usize)];
            if idx == NONE {
                return false;
            }
            if idx != 0 {
                g = g.then(&level.inv_reps[idx as usize]);
            }
        }
        g.is_identity()
    }

    /// Index of a known member in the element numbering, computed from its
    /// base images alone. The result is meaningless for non-members.
    pub fn index_of_member(&self, g: &Perm) -> u64 {
        let mut images: Vec<Point> = self.levels.iter().map(|l| g.images()[l.base as usize]).collect();
        self.index_from_base_images(&mut images)
    }

    /// Index of the member whose base images are `images`; clobbers `images`.
    pub fn index_from_base_images(&self, images: &mut [Point]) -> u64 {
        let mut index = 0u64;
        for (i, level) in self.levels.iter().enumerate() {
            let idx = level.pos[images[i] as usize];
            debug_assert_ne!(idx, NONE, "not a member");
            index = index * level.orbit.len() as u64 + idx as u64;
            if idx != 0 {
                let inv = &level.inv_reps[idx as usize];
                for b in &mut images[i + 1..] {
                    *b = inv.images()[*b as usize];
                }
            }
        }
        index
    }

    /// Base points as positions, for callers that track base images.
    pub fn base_points(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// The element with the given index.
    pub fn element(&self, mut index: u64) -> Perm {
        let mut digits = vec![0usize; self.levels.len()];
        for (i, level) in self.levels.iter().enumerate().rev() {
            let n = level.orbit.len() as u64;
            digits[i] = (index % n) as usize;
            index /= n;
        }
        let mut g = Perm::identity(self.degree);
        for (i, level) in self.levels.iter().enumerate() {
            g = level.reps[digits[i]].then(&g);
        }
        g
    }

    /// All elements in index order.
    pub fn iter(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }
}

/// Iterator over all elements of a chain in index order.
pub struct ElementIter<'a> {
    chain: &'a StabChain,
    digits: Vec<usize>,
    // partial[i] = u_i[d_i] · .. · u_0[d_0]
    partial: Vec<Perm>,
    done: bool,
    started: bool,
}

impl<'a> ElementIter<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let k = chain.levels.len();
        let mut partial = Vec::with_capacity(k);
        for i in 0..k {
            partial.push(if i == 0 {
                chain.levels[0].reps[0].clone()
            } else {
                Perm::identity(chain.degree)
            });
        }
        ElementIter {
            chain,
            digits: vec![0; k],
            partial,
            done: false,
            started: false,
        }
    }

    fn refresh_from(&mut self, from: usize) {
        for i in from..self.digits.len() {
            let rep = &self.chain.levels[i].reps[self.digits[i]];
            self.partial[i] = if i == 0 {
                rep.clone()
            } else {
                rep.then(&self.partial[i - 1])
            };
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let k = self.digits.len();
        if k == 0 {
            self.done = true;
            return Some(Perm::identity(self.chain.degree));
        }
        if !self.started {
            self.started = true;
            self.refresh_from(0);
            return Some(self.partial[k - 1].clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.chain.levels[i].orbit.len() {
                break;
            }
            self.digits[i] = 0;
        }
        self.refresh_from(i);
        Some(self.partial[k - 1].clone())
    }
}
