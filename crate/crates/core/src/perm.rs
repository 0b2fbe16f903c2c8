//! Permutations of `{0, .., degree-1}` acting on the right.
//!
//! `p.compose(&q)` is "first `p`, then `q`": `x·(pq) = (x·p)·q`. Every group
//! in the crate is a set of these, so the representation is kept flat: one
//! byte per point, which bounds the degree at [`MAX_DEGREE`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree representable with byte-sized images.
pub const MAX_DEGREE: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Perm((0..degree).map(|i| i as u8).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPerm(format!("degree {degree} out of range")));
        }
        let mut seen = vec![false; degree];
        for &x in images {
            if x >= degree || seen[x] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    /// Builds a permutation from disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPerm(format!("degree {degree} out of range")));
        }
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(Error::InvalidPerm(format!(
                        "point out of range in {cycle:?}"
                    )));
                }
                images[x] = y;
            }
            let c = Perm::from_images(&images)?;
            p = p.mul(&c);
        }
        Ok(p)
    }

    /// Wraps raw byte images; the caller guarantees a bijection.
    pub(crate) fn from_bytes(bytes: &[u8]) -> Perm {
        debug_assert!(is_bijection(bytes));
        Perm(bytes.into())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked product `self · other`; panics on mismatched degrees.
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let mut out = vec![0u8; self.degree()];
        compose_into(&self.0, &other.0, &mut out);
        Perm(out.into())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.degree()];
        invert_into(&self.0, &mut out);
        Perm(out.into())
    }

    pub fn pow(&self, exp: i64) -> Perm {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> u64 {
        order_of(&self.0)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().mul(self).mul(g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Places `self` on the points `offset..offset+degree` of a larger set.
    pub fn shifted(&self, offset: usize, total_degree: usize) -> Perm {
        assert!(offset + self.degree() <= total_degree);
        let mut out: Vec<u8> = (0..total_degree).map(|i| i as u8).collect();
        for (i, &x) in self.0.iter().enumerate() {
            out[offset + i] = (offset + x as usize) as u8;
        }
        Perm(out.into())
    }

    /// Restricts to `offset..offset+degree`, which must be an invariant block.
    pub fn restricted(&self, offset: usize, degree: usize) -> Perm {
        let out: Vec<u8> = self.0[offset..offset + degree]
            .iter()
            .map(|&x| x - offset as u8)
            .collect();
        Perm::from_bytes(&out)
    }
}

#[inline]
pub(crate) fn compose_into(p: &[u8], q: &[u8], out: &mut [u8]) {
    for (o, &x) in out.iter_mut().zip(p) {
        *o = q[x as usize];
    }
}

#[inline]
pub(crate) fn invert_into(p: &[u8], out: &mut [u8]) {
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
}

pub(crate) fn is_bijection(bytes: &[u8]) -> bool {
    let mut seen = vec![false; bytes.len()];
    bytes.iter().all(|&x| {
        let x = x as usize;
        x < seen.len() && !std::mem::replace(&mut seen[x], true)
    })
}

pub(crate) fn order_of(p: &[u8]) -> u64 {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut order = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&x| x as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let q = Perm::from_images(&[2, 0, 3, 1]).unwrap();
        assert_eq!(Perm::identity(4).compose(&q).unwrap(), q);
        assert_eq!(q.compose(&Perm::identity(4)).unwrap(), q);
    }

    #[test]
    fn transposition_is_an_involution() {
        let t = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn product_matches_direct_evaluation() {
        let p = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let q = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let pq = p.compose(&q).unwrap();
        // two-line evaluation of x -> q(p(x)), written out by hand:
        // p: 0->1, 1->2, 2->0 ; q: 0->1, 1->0, 2->2
        // x=0: p=1, q=0 ; x=1: p=2, q=2 ; x=2: p=0, q=1
        assert_eq!(pq.images(), vec![0, 2, 1]);
        for x in 0..3 {
            assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Perm::identity(3);
        let q = Perm::identity(4);
        assert_eq!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::from_images(&[0, 3, 1]).is_err());
        assert!(Perm::from_images(&[]).is_err());
    }

    #[test]
    fn order_and_cycles() {
        let p = Perm::from_cycles(6, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycles(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn shift_and_restrict_round_trip() {
        let p = Perm::from_cycles(3, &[&[0, 2]]).unwrap();
        let s = p.shifted(2, 6);
        assert_eq!(s.images(), vec![0, 1, 4, 3, 2, 5]);
        assert_eq!(s.restricted(2, 3), p);
    }
}
