//! Invariant factors of abelian groups and abelianizations, and the
//! normal-generation invariants `dg` and `dg_p`.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::subgroup::{commutator_subgroup, conjugacy_classes, quotient_group, CosetQuotient};

/// Invariant factors `d₁ | d₂ | … | d_k`, each at least 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl AbelianInvariants {
    /// Validates the divisibility chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) || factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!(
                "{factors:?} is not an invariant-factor chain"
            )));
        }
        Ok(AbelianInvariants { factors })
    }

    /// Merges prime-power cyclic orders into invariant factors.
    pub fn from_primary_parts(parts: &[u64]) -> Self {
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for &q in parts.iter().filter(|&&q| q > 1) {
            let p = factorize(q)[0].0;
            match by_prime.iter_mut().find(|(r, _)| *r == p) {
                Some((_, v)) => v.push(q),
                None => by_prime.push((p, vec![q])),
            }
        }
        let k = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; k];
        for (_, mut v) in by_prime {
            v.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in v.into_iter().enumerate() {
                factors[k - 1 - i] *= q;
            }
        }
        AbelianInvariants { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of invariant factors, the minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Rank of the `p`-primary part.
    pub fn p_rank(&self, p: u64) -> usize {
        self.factors.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn primary_parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                out.push(p.pow(e));
            }
        }
        out.sort_unstable();
        out
    }

    /// Invariants of the direct sum.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> Self {
        let mut parts = self.primary_parts();
        parts.extend(other.primary_parts());
        Self::from_primary_parts(&parts)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.factors)
    }
}

/// Reconstructs invariants from torsion counts: `torsion(m)` is the number of
/// elements `x` with `x^m = 1`, which for `m = p^k` equals `p^{Σ min(k, e_i)}`.
fn from_census(order: u64, torsion: impl Fn(u64) -> u64) -> AbelianInvariants {
    let mut parts = Vec::new();
    for (p, e) in factorize(order) {
        let log = |mut n: u64| {
            let mut k = 0usize;
            while n > 1 {
                n /= p;
                k += 1;
            }
            k
        };
        // at_least[k] = #{i : e_i ≥ k}
        let mut at_least = vec![0usize; e as usize + 2];
        let mut prev = 0usize;
        for (k, slot) in at_least.iter_mut().enumerate().take(e as usize + 1).skip(1) {
            let lk = log(torsion(p.pow(k as u32)));
            *slot = lk - prev;
            prev = lk;
        }
        for k in 1..=e as usize {
            for _ in 0..at_least[k] - at_least[k + 1] {
                parts.push(p.pow(k as u32));
            }
        }
    }
    AbelianInvariants::from_primary_parts(&parts)
}

pub fn abelian_invariants(a: &FiniteGroup) -> Result<AbelianInvariants> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian(a.label().to_string()));
    }
    let orders = a.element_orders();
    Ok(from_census(a.order() as u64, |m| {
        orders.iter().filter(|&&o| m % o as u64 == 0).count() as u64
    }))
}

/// Invariants of `G/[G,G]` without building the quotient: the coset `xK`
/// satisfies `(xK)^m = K` exactly when `x^m ∈ K`.
pub fn abelianization_invariants(g: &FiniteGroup, limits: &Limits) -> Result<AbelianInvariants> {
    if g.is_abelian() {
        return abelian_invariants(g);
    }
    let k = commutator_subgroup(g, limits)?;
    let index = (g.order() / k.order()) as u64;
    let mut result = AbelianInvariants::default();
    let census = |m: u64| -> u64 {
        let hits = (0..g.order())
            .filter(|&i| k.contains(&g.element(i).pow(m as i64)))
            .count();
        (hits / k.order()) as u64
    };
    limits.cancel.check()?;
    if index > 1 {
        result = from_census(index, census);
    }
    Ok(result)
}

/// `G/[G,G]` as a permutation group on cosets, with its invariants.
pub fn abelianization(
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<(CosetQuotient, AbelianInvariants)> {
    let k = commutator_subgroup(g, limits)?;
    let q = quotient_group(g, &k, limits)?;
    let inv = abelian_invariants(q.quotient())?;
    Ok((q, inv))
}

/// Rank of the `p`-Sylow subgroup of the abelianization.
pub fn dg_p(g: &FiniteGroup, p: u64, limits: &Limits) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(abelianization_invariants(g, limits)?.p_rank(p))
}

/// Minimal size of a normally generating set, computed as the number of
/// invariant factors of the abelianization. Zero for the trivial group; an
/// error for perfect nontrivial groups.
pub fn dg(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    if g.is_trivial() {
        return Ok(0);
    }
    let inv = abelianization_invariants(g, limits)?;
    if inv.is_trivial() {
        return Err(Error::PerfectGroup(g.label().to_string()));
    }
    Ok(inv.rank())
}

/// `dg` straight from the definition: the least `k` such that some `k`
/// elements have normal closure `G`.
///
/// Breadth-first over normal closures: level `k` holds every normal subgroup
/// generated by `k` conjugacy classes. Normal closure depends only on the
/// classes of the chosen elements, so this is exhaustive.
pub fn dg_brute(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    limits.check_brute(g.order())?;
    if g.is_trivial() {
        return Ok(0);
    }
    let t = g.require_table()?;
    let n = g.order();
    let classes: Vec<Vec<usize>> = conjugacy_classes(g)?.into_iter().skip(1).collect();
    let closures: Vec<(FixedBitSet, Vec<usize>)> = classes
        .iter()
        .map(|c| {
            let bits = t.closure(c.iter().copied());
            let gens = t.generating_subset(&bits);
            (bits, gens)
        })
        .collect();
    let mut trivial = FixedBitSet::with_capacity(n);
    trivial.insert(0);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
    let mut level: Vec<(FixedBitSet, Vec<usize>)> = vec![(trivial, Vec::new())];
    for k in 1.. {
        limits.cancel.check()?;
        let mut next = Vec::new();
        for (bits, gens) in &level {
            for (c, (_, cgens)) in classes.iter().zip(&closures) {
                if bits.contains(c[0]) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.extend(cgens);
                let joined = t.join(bits, &g2);
                if joined.count_ones(..) == n {
                    return Ok(k);
                }
                if seen.insert(joined.clone()) {
                    next.push((joined, g2));
                }
            }
        }
        debug_assert!(!next.is_empty(), "G itself is reached first");
        level = next;
    }
    unreachable!("the classes together generate G")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, cyclic, dihedral, quaternion8, symmetric3};
    use crate::wreath::regular_wreath;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn invariants_of_abelian_groups() {
        let inv = |orders: &[u64]| {
            abelian_invariants(&abelian(orders, &limits()).unwrap())
                .unwrap()
                .factors()
                .to_vec()
        };
        assert_eq!(inv(&[6]), vec![6]);
        assert_eq!(inv(&[2, 4]), vec![2, 4]);
        assert_eq!(inv(&[2, 3, 4]), vec![2, 12]);
        assert_eq!(inv(&[4, 6, 9]), vec![6, 36]);
        assert!(inv(&[]).is_empty());
    }

    #[test]
    fn census_oracle_for_c2_c3_c4() {
        let g = abelian(&[2, 3, 4], &limits()).unwrap();
        // elements of order dividing m: brute count over all 24 elements
        let count = |m: u32| {
            g.element_orders()
                .iter()
                .filter(|&&o| m.is_multiple_of(o))
                .count()
        };
        assert_eq!((count(2), count(4), count(3)), (4, 8, 3));
        // [2,12] predicts 2·2 = 4, 2·4 = 8, 3
        assert_eq!(abelian_invariants(&g).unwrap().factors(), &[2, 12]);
    }

    #[test]
    fn non_abelian_input_is_rejected() {
        assert!(matches!(
            abelian_invariants(&symmetric3()),
            Err(Error::NotAbelian(_))
        ));
    }

    #[test]
    fn abelianizations() {
        let (q, inv) = abelianization(&symmetric3(), &limits()).unwrap();
        assert_eq!(q.quotient().order(), 2);
        assert_eq!(inv.factors(), &[2]);
        let (_, inv) = abelianization(&dihedral(4).unwrap(), &limits()).unwrap();
        assert_eq!(inv.factors(), &[2, 2]);
        let (_, inv) = abelianization(&quaternion8(), &limits()).unwrap();
        assert_eq!(inv.factors(), &[2, 2]);
        for g in [
            symmetric3(),
            dihedral(4).unwrap(),
            quaternion8(),
            dihedral(6).unwrap(),
        ] {
            let (_, a) = abelianization(&g, &limits()).unwrap();
            assert_eq!(a, abelianization_invariants(&g, &limits()).unwrap());
        }
    }

    #[test]
    fn direct_sum_merges_primary_parts() {
        let a = AbelianInvariants::new(vec![2]).unwrap();
        let b = AbelianInvariants::new(vec![2, 6]).unwrap();
        assert_eq!(a.direct_sum(&b).factors(), &[2, 2, 6]);
        let c = AbelianInvariants::new(vec![3]).unwrap();
        assert_eq!(a.direct_sum(&c).factors(), &[6]);
        assert!(AbelianInvariants::new(vec![2, 3]).is_err());
    }

    #[test]
    fn dg_values() {
        let d4 = dihedral(4).unwrap();
        assert_eq!(dg_p(&d4, 2, &limits()).unwrap(), 2);
        assert_eq!(dg_p(&symmetric3(), 3, &limits()).unwrap(), 0);
        let c2 = cyclic(2).unwrap();
        let w = regular_wreath(&c2, &c2, &limits()).unwrap();
        assert_eq!(dg_p(w.carrier(), 2, &limits()).unwrap(), 2);
        assert_eq!(dg(&symmetric3(), &limits()).unwrap(), 1);
        assert_eq!(dg(&d4, &limits()).unwrap(), 2);
        assert_eq!(dg(&cyclic(6).unwrap(), &limits()).unwrap(), 1);
        assert_eq!(dg(&FiniteGroup::trivial(1), &limits()).unwrap(), 0);
        assert!(matches!(dg_p(&d4, 4, &limits()), Err(Error::NotPrime(4))));
    }

    #[test]
    fn dg_brute_small_cases() {
        assert_eq!(dg_brute(&FiniteGroup::trivial(1), &limits()).unwrap(), 0);
        assert_eq!(dg_brute(&symmetric3(), &limits()).unwrap(), 1);
        assert_eq!(
            dg_brute(&abelian(&[2, 2], &limits()).unwrap(), &limits()).unwrap(),
            2
        );
        assert_eq!(dg_brute(&quaternion8(), &limits()).unwrap(), 2);
    }

    #[test]
    fn perfect_groups_have_no_dg() {
        let a5 = FiniteGroup::generate(
            5,
            vec![
                crate::perm::Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                crate::perm::Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
            "A5",
        )
        .unwrap();
        assert!(matches!(dg(&a5, &limits()), Err(Error::PerfectGroup(_))));
        // by the definition every nontrivial element normally generates A5
        assert_eq!(dg_brute(&a5, &limits()).unwrap(), 1);
    }
}
