//! Permutations of `{0, .., d-1}` stored as image arrays.
//!
//! Products are read left to right: `p.then(&q)` (also `&p * &q`) applies `p`
//! first and `q` second, so it maps `k` to `q(p(k))`. Cycle notation is parsed
//! under the same convention.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A point of the permutation domain.
pub type Point = u16;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 1 << 16;

/// A permutation given by its images; entry `k` is the image of point `k`.
///
/// The derived ordering compares image arrays lexicographically, which is the
/// canonical order used for catalogs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[Point]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Perm {
            images: (0..degree).map(|k| k as Point).collect(),
        }
    }

    /// Builds a permutation from an image list, checking that it is a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(d));
        }
        let mut seen = vec![false; d];
        for &x in images {
            if x >= d {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {d}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Perm {
            images: images.iter().map(|&x| x as Point).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears in more than one cycle position"
                    )));
                }
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses either an image list `[i0,i1,...]` or cycle notation
    /// `(a b c)(d e)` (commas between points are also accepted).
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |msg: String| Error::InvalidPermutation(msg);
        if let Some(body) = text.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| bad(format!("unterminated image list `{text}`")))?;
            let images = parse_points(body)?;
            if images.len() != degree {
                return Err(Error::DegreeMismatch(images.len(), degree));
            }
            return Self::from_images(&images);
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| bad(format!("unterminated cycle in `{text}`")))?;
            let cycle = parse_points(&open[..close])?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    /// `self` followed by `other`; panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Checked composition: maps `k` to `q(p(k))`.
    pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
        if p.degree() != q.degree() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        Ok(p.then(q))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0 as Point; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize] = k as Point;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `x⁻¹ · self · x`, the image of `self` under conjugation by `x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        let mut out = vec![0 as Point; self.degree()];
        for (k, &img) in self.images.iter().enumerate() {
            out[x.images[k] as usize] = x.images[img as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// True iff `self` is an involution, i.e. has order exactly 2.
    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(k, &x)| self.images[x as usize] as usize == k)
    }

    /// Least `m ≥ 1` with `self^m = id`, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    fn cycle_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen = vec![false; self.degree()];
        (0..self.degree()).filter_map(move |start| {
            if seen[start] {
                return None;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] as usize;
                len += 1;
            }
            Some(len)
        })
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k);
                k = self.image(k);
            }
            out.push(cycle);
        }
        out
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(k, &x)| k != x as usize)
            .map(|(k, _)| k)
    }

    /// Image array as plain integers, the catalog serialization.
    pub fn to_vec(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x as u32).collect()
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("bad point `{s}`")))
        })
        .collect()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(images: &[usize]) -> Perm {
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn compose_follows_left_to_right_convention() {
        let a = p(&[1, 2, 0]);
        let b = p(&[0, 2, 1]);
        // 0 -> 1 -> 2, 1 -> 2 -> 1, 2 -> 0 -> 0
        assert_eq!(Perm::compose(&a, &b).unwrap(), p(&[2, 1, 0]));
        let id = Perm::identity(3);
        assert_eq!(Perm::compose(&id, &a).unwrap(), a);
        assert!(Perm::compose(&a, &a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Perm::compose(&Perm::identity(3), &Perm::identity(4)).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn element_orders() {
        assert_eq!(Perm::identity(5).order(), 1);
        assert_eq!(p(&[1, 0, 2]).order(), 2);
        assert_eq!(p(&[1, 2, 0, 4, 3]).order(), 6);
    }

    #[test]
    fn parse_both_notations() {
        let a = Perm::parse(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(a, p(&[1, 2, 0, 4, 3]));
        assert_eq!(Perm::parse(5, "[1,2,0,4,3]").unwrap(), a);
        assert_eq!(Perm::parse(5, "(0,1,2)(3,4)").unwrap(), a);
        assert!(Perm::parse(3, "()").unwrap().is_identity());
        assert!(Perm::parse(3, "(0 1)(1 2)").is_err());
        assert!(Perm::parse(3, "[0,0,1]").is_err());
        assert!(Perm::parse(3, "(0 5)").is_err());
        assert_eq!(a.to_string(), "(0 1 2)(3 4)");
    }

    #[test]
    fn cycle_notation_respects_convention() {
        // (0 1) then (1 2): 0 -> 1 -> 2, so the product is the 3-cycle (0 2 1).
        let a = Perm::parse(3, "(0 1)").unwrap();
        let b = Perm::parse(3, "(1 2)").unwrap();
        assert_eq!(&a * &b, Perm::parse(3, "(0 2 1)").unwrap());
    }

    #[test]
    fn conjugation_and_commutation() {
        let x = Perm::parse(4, "(0 1 2 3)").unwrap();
        let t = Perm::parse(4, "(0 1)").unwrap();
        let c = t.conjugate_by(&x);
        assert_eq!(c, &(&x.inverse() * &t) * &x);
        assert_eq!(c, Perm::parse(4, "(1 2)").unwrap());
        assert!(t.commutes_with(&Perm::parse(4, "(2 3)").unwrap()));
        assert!(!t.commutes_with(&c));
        assert!(t.is_involution());
        assert!(!x.is_involution());
    }

    fn arb_perm(d: usize) -> impl Strategy<Value = Perm> {
        Just((0..d).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_is_associative(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!((&a * &b).then(&c), a.then(&(&b * &c)));
        }

        #[test]
        fn inverse_cancels(a in arb_perm(12)) {
            prop_assert!((&a.inverse() * &a).is_identity());
            prop_assert!((&a * &a.inverse()).is_identity());
        }

        #[test]
        fn order_annihilates(a in arb_perm(10)) {
            let m = a.order();
            prop_assert!(a.pow(m).is_identity());
            for k in 1..m {
                prop_assert!(!a.pow(k).is_identity());
            }
        }

        #[test]
        fn cycle_string_round_trips(a in arb_perm(11)) {
            prop_assert_eq!(Perm::parse(11, &a.to_string()).unwrap(), a);
        }
    }
}
