//! Normal closures, commutator subgroups, derived series, quotients, Sylow
//! subgroups of nilpotent groups and direct products.

use fixedbitset::FixedBitSet;

use crate::arith::{factorize, is_prime, is_prime_power_of};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::hom::{verify_homomorphism, Homomorphism};
use crate::perm::{Perm, MAX_DEGREE};

fn sub_limits(g: &FiniteGroup, limits: &Limits) -> Limits {
    Limits {
        element_cap: g.order(),
        ..limits.clone()
    }
}

/// Smallest normal subgroup of `g` containing `s`.
///
/// Grows a generating set by conjugates under the generators of `g` until it
/// is invariant. Each accepted conjugate at least doubles the subgroup, so
/// re-closing from scratch costs at most twice the final closure.
pub fn normal_closure(g: &FiniteGroup, s: &[Perm], limits: &Limits) -> Result<FiniteGroup> {
    if let Some(x) = s.iter().find(|x| !g.contains(x)) {
        return Err(Error::Invalid(format!(
            "{x} is not an element of {}",
            g.label()
        )));
    }
    let sl = sub_limits(g, limits);
    let mut gens: Vec<Perm> = Vec::new();
    let mut n = FiniteGroup::trivial(g.degree());
    for x in s {
        if !n.contains(x) {
            gens.push(x.clone());
            n = FiniteGroup::generate_with(g.degree(), gens.clone(), "", &sl)?;
        }
    }
    let mut i = 0;
    while i < gens.len() {
        for h in g.generators() {
            let c = gens[i].conjugate_by(h);
            if !n.contains(&c) {
                gens.push(c);
                n = FiniteGroup::generate_with(g.degree(), gens.clone(), "", &sl)?;
            }
        }
        i += 1;
    }
    if gens.is_empty() {
        gens.push(g.identity());
    }
    Ok(n.with_generators(gens)
        .with_label(format!("<<S>> in {}", g.label())))
}

pub fn is_normal(g: &FiniteGroup, n: &FiniteGroup) -> bool {
    n.is_subgroup_of(g)
        && n.generators().iter().all(|x| {
            g.generators()
                .iter()
                .all(|h| n.contains(&x.conjugate_by(h)))
        })
}

/// `[G,G]`, computed as the normal closure of the commutators of generators.
pub fn commutator_subgroup(g: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    Ok(normal_closure(g, &comms, limits)?.with_label(format!("[{0},{0}]", g.label())))
}

/// `G = G⁽⁰⁾ > G⁽¹⁾ > … > 1`; errors if the series stalls above the trivial group.
pub fn derived_series(g: &FiniteGroup, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_trivial() {
            return Ok(series);
        }
        let next = commutator_subgroup(last, limits)?;
        if next.order() == last.order() {
            return Err(Error::NotSolvable {
                order: last.order(),
            });
        }
        series.push(next);
    }
}

pub fn derived_length(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    Ok(derived_series(g, limits)?.len() - 1)
}

/// `G/N` acting faithfully on the right cosets `Nx`.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    parent: FiniteGroup,
    normal: FiniteGroup,
    coset_of: Vec<u32>,
    representatives: Vec<usize>,
    quotient: FiniteGroup,
    projection: Homomorphism,
}

impl CosetQuotient {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn normal_subgroup(&self) -> &FiniteGroup {
        &self.normal
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    /// The canonical map `G → G/N`, verified.
    pub fn projection(&self) -> &Homomorphism {
        &self.projection
    }

    pub fn coset_count(&self) -> usize {
        self.representatives.len()
    }

    /// Coset index of the parent element with the given index.
    pub fn coset_of(&self, index: usize) -> usize {
        self.coset_of[index] as usize
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// Image of a parent element as a permutation of the cosets.
    pub fn image_of(&self, x: &Perm) -> Result<Perm> {
        coset_action(&self.parent, &self.coset_of, &self.representatives, x)
    }
}

/// Assigns every element of `g` to its right coset `Nx`.
pub(crate) fn right_cosets(
    g: &FiniteGroup,
    n: &FiniteGroup,
    limits: &Limits,
) -> Result<(Vec<u32>, Vec<usize>)> {
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let n_elems: Vec<Perm> = (0..n.order()).map(|i| n.element(i)).collect();
    let mut buf = vec![0u8; g.degree()];
    for x in 0..g.order() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        if reps.len() % 256 == 0 {
            limits.cancel.check()?;
        }
        let c = reps.len() as u32;
        reps.push(x);
        let xe = g.elements().get(x).to_vec();
        for m in &n_elems {
            crate::perm::compose_into(m.as_bytes(), &xe, &mut buf);
            let i = g.elements().index_of(&buf).expect("N is a subgroup of G");
            coset_of[i] = c;
        }
    }
    Ok((coset_of, reps))
}

fn coset_action(g: &FiniteGroup, coset_of: &[u32], reps: &[usize], x: &Perm) -> Result<Perm> {
    let images: Vec<usize> = reps
        .iter()
        .map(|&r| {
            let y = g.element(r).mul(x);
            coset_of[g.index_of(&y).expect("closed")] as usize
        })
        .collect();
    Perm::from_images(&images)
}

pub fn quotient_group(g: &FiniteGroup, n: &FiniteGroup, limits: &Limits) -> Result<CosetQuotient> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal(format!("{} in {}", n.label(), g.label())));
    }
    let label = format!("{}/{}", g.label(), n.label());
    if n.is_trivial() {
        let quotient = g.with_label(label);
        let projection = verify_homomorphism(g, &quotient, g.generators().to_vec(), limits)?
            .with_anchor("canonical projection");
        return Ok(CosetQuotient {
            parent: g.clone(),
            normal: n.clone(),
            coset_of: (0..g.order() as u32).collect(),
            representatives: (0..g.order()).collect(),
            quotient,
            projection,
        });
    }
    let (coset_of, reps) = right_cosets(g, n, limits)?;
    if reps.len() > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: reps.len(),
            cap: MAX_DEGREE,
        });
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| coset_action(g, &coset_of, &reps, x))
        .collect::<Result<Vec<_>>>()?;
    let quotient = FiniteGroup::generate_with(reps.len(), gens.clone(), label, limits)?;
    let projection = verify_homomorphism(g, &quotient, gens, limits)?
        .expect_epimorphism("canonical projection")?;
    Ok(CosetQuotient {
        parent: g.clone(),
        normal: n.clone(),
        coset_of,
        representatives: reps,
        quotient,
        projection,
    })
}

/// Conjugacy classes as lists of element indices, in order of first element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let t = g.require_table()?;
    let gens: Vec<usize> = t.generators().iter().map(|&x| x as usize).collect();
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if seen.contains(x) {
            continue;
        }
        let orbit = t.conjugation_orbit(x, &gens);
        for &y in &orbit {
            seen.insert(y);
        }
        classes.push(orbit);
    }
    Ok(classes)
}

/// A finite group is nilpotent iff for every prime `p` the elements of
/// `p`-power order number exactly `|G|_p` (the Sylow subgroup is unique).
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    let orders = g.element_orders();
    factorize(g.order() as u64).into_iter().all(|(p, e)| {
        let count = orders
            .iter()
            .filter(|&&o| is_prime_power_of(o as u64, p))
            .count();
        count as u64 == p.pow(e)
    })
}

/// The `p`-Sylow subgroup of a nilpotent group: all elements of `p`-power order.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64, limits: &Limits) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_nilpotent(g) {
        return Err(Error::NotNilpotent(g.label().to_string()));
    }
    let sl = sub_limits(g, limits);
    let orders = g.element_orders();
    let mut gens = Vec::new();
    let mut current = FiniteGroup::trivial(g.degree());
    for (i, &o) in orders.iter().enumerate() {
        if o > 1 && is_prime_power_of(o as u64, p) {
            let x = g.element(i);
            if !current.contains(&x) {
                gens.push(x);
                current = FiniteGroup::generate_with(g.degree(), gens.clone(), "", &sl)?;
            }
        }
    }
    Ok(current.with_label(format!("Syl_{p}({})", g.label())))
}

/// `G × H` on the disjoint union of their points, `G` first.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let degree = g.degree() + h.degree();
    limits.check_degree(degree)?;
    let mut gens: Vec<Perm> = g
        .generators()
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.shifted(0, degree))
        .collect();
    gens.extend(
        h.generators()
            .iter()
            .filter(|x| !x.is_identity())
            .map(|x| x.shifted(g.degree(), degree)),
    );
    FiniteGroup::generate_with(
        degree,
        gens,
        format!("{} * {}", g.label(), h.label()),
        limits,
    )
}

/// `G` acting on its own elements by right multiplication.
///
/// Element `k` of the result is right multiplication by element `k` of `g`,
/// and its natural action on points is the right regular action of `g`.
pub fn regular_representation(g: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let n = g.order();
    if n > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: n,
            cap: MAX_DEGREE,
        });
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| right_multiplication(g, x))
        .collect::<Vec<_>>();
    let reg = FiniteGroup::generate_with(n, gens, g.label(), limits)?;
    debug_assert!((0..n).all(|k| reg.element(k).apply(0) == k));
    Ok(reg)
}

pub(crate) fn right_multiplication(g: &FiniteGroup, x: &Perm) -> Perm {
    let images: Vec<usize> = (0..g.order())
        .map(|k| g.index_of(&g.element(k).mul(x)).expect("closed"))
        .collect();
    Perm::from_images(&images).expect("regular action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, quaternion8, symmetric3};
    use crate::wreath::regular_wreath;

    fn limits() -> Limits {
        Limits::default()
    }

    /// Every subgroup of a small group, by closing all subsets (oracle).
    fn all_subgroups(g: &FiniteGroup) -> Vec<FixedBitSet> {
        let t = g.table().unwrap();
        let n = g.order();
        let mut subs: Vec<FixedBitSet> = Vec::new();
        for mask in 0u32..(1 << n) {
            let bits = t.closure((0..n).filter(|i| mask >> i & 1 == 1));
            if !subs.contains(&bits) {
                subs.push(bits);
            }
        }
        subs
    }

    fn brute_normal_closure(g: &FiniteGroup, s: &[usize]) -> usize {
        let t = g.table().unwrap();
        all_subgroups(g)
            .into_iter()
            .filter(|h| {
                s.iter().all(|&x| h.contains(x))
                    && h.ones()
                        .all(|x| (0..g.order()).all(|y| h.contains(t.conj(x, y))))
            })
            .map(|h| h.count_ones(..))
            .min()
            .unwrap()
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let s3 = symmetric3();
        let n = normal_closure(&s3, &[s3.identity()], &limits()).unwrap();
        assert!(n.is_trivial());
    }

    #[test]
    fn normal_closure_matches_subgroup_enumeration_in_s3() {
        let s3 = symmetric3();
        let orders = s3.element_orders().to_vec();
        let three = (0..6).find(|&i| orders[i] == 3).unwrap();
        let two = (0..6).find(|&i| orders[i] == 2).unwrap();
        for (x, expected) in [(three, 3), (two, 6)] {
            assert_eq!(brute_normal_closure(&s3, &[x]), expected);
            let n = normal_closure(&s3, &[s3.element(x)], &limits()).unwrap();
            assert_eq!(n.order(), expected);
        }
    }

    fn brute_commutator_order(g: &FiniteGroup) -> usize {
        let t = g.table().unwrap();
        let n = g.order();
        let mut comms = Vec::new();
        for x in 0..n {
            for y in 0..n {
                comms.push(t.mul(t.mul(t.inv(x), t.inv(y)), t.mul(x, y)));
            }
        }
        t.closure(comms).count_ones(..)
    }

    #[test]
    fn commutator_subgroups() {
        let c6 = cyclic(6).unwrap();
        assert!(commutator_subgroup(&c6, &limits()).unwrap().is_trivial());
        let s3 = symmetric3();
        assert_eq!(brute_commutator_order(&s3), 3);
        assert_eq!(commutator_subgroup(&s3, &limits()).unwrap().order(), 3);
        let c2 = cyclic(2).unwrap();
        let w = regular_wreath(&c2, &c2, &limits()).unwrap();
        let k = commutator_subgroup(w.carrier(), &limits()).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(brute_commutator_order(w.carrier()), 2);
        for g in [quaternion8(), dihedral(5).unwrap(), dihedral(6).unwrap()] {
            assert_eq!(
                commutator_subgroup(&g, &limits()).unwrap().order(),
                brute_commutator_order(&g)
            );
        }
    }

    #[test]
    fn derived_lengths() {
        let e = FiniteGroup::trivial(1);
        assert_eq!(derived_length(&e, &limits()).unwrap(), 0);
        let c2 = cyclic(2).unwrap();
        let w = regular_wreath(&c2, &c2, &limits()).unwrap();
        assert_eq!(derived_length(w.carrier(), &limits()).unwrap(), 2);
        let ww = regular_wreath(&c2, w.carrier(), &limits()).unwrap();
        assert_eq!(derived_length(ww.carrier(), &limits()).unwrap(), 3);
    }

    #[test]
    fn a5_is_not_solvable() {
        let a5 = FiniteGroup::generate(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
            "A5",
        )
        .unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(
            derived_length(&a5, &limits()),
            Err(Error::NotSolvable { order: 60 })
        );
    }

    #[test]
    fn quotients() {
        let c4 = cyclic(4).unwrap();
        let e = FiniteGroup::trivial(4);
        let q = quotient_group(&c4, &e, &limits()).unwrap();
        assert_eq!(q.quotient().order(), 4);

        let half = c4.subgroup(vec![c4.generators()[0].pow(2)], "C2").unwrap();
        let q = quotient_group(&c4, &half, &limits()).unwrap();
        assert_eq!(q.quotient().order(), 2);
        assert!(q.projection().is_surjective());

        let s3 = symmetric3();
        let a3 = commutator_subgroup(&s3, &limits()).unwrap();
        let q = quotient_group(&s3, &a3, &limits()).unwrap();
        assert_eq!(q.coset_count(), 6 / 3);
        assert_eq!(q.quotient().order() * a3.order(), s3.order());
    }

    #[test]
    fn quotient_by_non_normal_subgroup_is_rejected() {
        let s3 = symmetric3();
        let t = s3
            .subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()], "C2")
            .unwrap();
        assert!(matches!(
            quotient_group(&s3, &t, &limits()),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn canonical_map_is_multiplicative_exhaustively() {
        let d4 = dihedral(4).unwrap();
        let z = commutator_subgroup(&d4, &limits()).unwrap();
        let q = quotient_group(&d4, &z, &limits()).unwrap();
        for i in 0..d4.order() {
            for j in 0..d4.order() {
                let (x, y) = (d4.element(i), d4.element(j));
                assert_eq!(
                    q.image_of(&x.mul(&y)).unwrap(),
                    q.image_of(&x).unwrap().mul(&q.image_of(&y).unwrap())
                );
            }
        }
    }

    #[test]
    fn nilpotency() {
        assert!(!is_nilpotent(&symmetric3()));
        assert!(is_nilpotent(&quaternion8()));
        assert!(is_nilpotent(&cyclic(12).unwrap()));
        assert!(is_nilpotent(&dihedral(4).unwrap()));
        assert!(!is_nilpotent(&dihedral(6).unwrap()));
    }

    #[test]
    fn sylow_subgroups_of_nilpotent_groups() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(sylow_subgroup(&c6, 2, &limits()).unwrap().order(), 2);
        let c12 = cyclic(12).unwrap();
        let p = sylow_subgroup(&c12, 2, &limits()).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.exponent(), 4);
        let q8c3 = direct_product(&quaternion8(), &cyclic(3).unwrap(), &limits()).unwrap();
        let p = sylow_subgroup(&q8c3, 2, &limits()).unwrap();
        // element-order census: 1 of order 1, 1 of order 2, 6 of order 4
        let mut census = [0usize; 5];
        for &o in p.element_orders() {
            census[o as usize] += 1;
        }
        assert_eq!(census, [0, 1, 1, 0, 6]);
        assert!(matches!(
            sylow_subgroup(&symmetric3(), 2, &limits()),
            Err(Error::NotNilpotent(_))
        ));
        assert!(matches!(
            sylow_subgroup(&c6, 4, &limits()),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn direct_product_order() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap(), &limits()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree(), 5);
        assert_eq!(g.label(), "C2 * C3");
    }

    #[test]
    fn regular_representation_acts_regularly() {
        let s3 = symmetric3();
        let reg = regular_representation(&s3, &limits()).unwrap();
        assert_eq!(reg.order(), 6);
        assert_eq!(reg.degree(), 6);
        for k in 0..6 {
            assert_eq!(reg.element(k).apply(0), k);
        }
    }
}
